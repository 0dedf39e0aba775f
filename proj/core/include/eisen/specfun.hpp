#pragma once

#include <complex>
#include <cstddef>
#include <functional>

#include "eisen/arithgroup.hpp"

namespace eisen {

// Lanczos approximation (g = 7, nine terms) with reflection for Re z < 1/2.
cplx gamma_fn(cplx z);
cplx log_gamma(cplx z);

struct QuadratureResult {
  cplx value;
  double error{0};      // difference between the last two levels
  double magnitude{0};  // integral of |f|, the scale the tolerance is measured against
  int level{0};
  std::size_t evaluations{0};
};

// Double-exponential rule on (0, 1).  The integrand receives (v, 1 - v) with
// the complement computed without cancellation, so endpoint singularities of
// the form v^p (1 - v)^q are resolved.  Levels halve the step until two
// successive sums agree to rel_tol.
QuadratureResult tanh_sinh(const std::function<cplx(double, double)>& f, double rel_tol = 1e-13,
                           int max_level = 12);

// Fixed-level variant (no adaptivity); used where a grid must be refined on request.
QuadratureResult tanh_sinh_fixed(const std::function<cplx(double, double)>& f, int level);

struct BesselValue {
  cplx value;
  double error{0};          // absolute error estimate, including recurrence growth
  int recurrence_steps{0};  // number of three-term steps taken (0 when Re s >= 1)
};

// K_{s-1/2}(y).  Re s >= 1 uses the integral
//   (sqrt(pi)/Gamma(s)) (y/2)^{s-1/2} int_1^inf (t^2-1)^{s-1} e^{-ty} dt;
// smaller Re s steps down with K_{s-1/2} = K_{s+3/2} - ((2s+1)/y) K_{s+1/2}.
// That sign is the one the quadrature confirms; the bessel unit tests show the
// opposite arrangement failing.
BesselValue bessel_k_detailed(cplx s, double y);
cplx bessel_k(cplx s, double y);
// Direct quadrature, valid for Re s > 0.
cplx bessel_k_quadrature(cplx s, double y);

// kappa(s) = sqrt(pi) 3^{sigma-1} (1 + |Gamma(2 sigma - 1)|) / |Gamma(s)|.
double bessel_kappa(cplx s);

// W_s(kz) = 2 sqrt(|k| y) K_{s-1/2}(2 pi |k| y) e^{2 pi i k x}.
cplx whittaker_w(cplx s, std::int64_t k, const UpperHalfPoint& z);

class GreenParameter {
 public:
  GreenParameter(double a, double b);
  double a() const { return a_; }
  double b() const { return b_; }

 private:
  double a_;
  double b_;
};

// G_a(u) = (1/4 pi) int_0^1 (t(1-t))^{a-1} (t+u)^{-a} dt.
double green_g(double a, double u);
// G_a(u) - G_b(u) from one combined integrand; finite at u = 0.
double green_diff(const GreenParameter& p, double u);

struct TailLemmaValues {
  double lhs{0};
  double rhs{0};
};

// lhs = sum_{k>=1} k^r e^{2 pi (D sqrt k - y k)},
// rhs = e^{-2 pi y} (1 + e^{-pi y}/y^{r+1} + e^{8 pi D^2/y}/y^{2r+2}).
TailLemmaValues verify_tail_lemma(double D, double r, double y);

}  // namespace eisen
