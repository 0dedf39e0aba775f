#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "eisen/errors.hpp"
#include "eisen/specfun.hpp"

using namespace eisen;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(cplx got, cplx want) { return std::abs(got - want) / std::abs(want); }

// Q_1 and Q_3 at x = 1 + 2u, with (x + 1)/(x - 1) = (1 + u)/u formed exactly.
double legendre_q(int degree, double u) {
  const double x = 1.0 + 2.0 * u;
  const double half_log = 0.5 * std::log((1.0 + u) / u);
  if (degree == 1) return x * half_log - 1.0;
  return 0.5 * (5.0 * x * x * x - 3.0 * x) * half_log - 2.5 * x * x + 2.0 / 3.0;
}

}  // namespace

TEST_CASE("gamma function") {
  for (double x : {0.3, 1.0, 2.5, 7.25, 15.0}) CHECK(rel(gamma_fn(x), std::tgamma(x)) < 1e-13);
  for (double x : {-0.5, -2.7}) CHECK(rel(gamma_fn(x), std::tgamma(x)) < 1e-12);
  // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
  for (double t : {0.5, 3.0, 12.0})
    CHECK(std::norm(gamma_fn(cplx(0.5, t))) == doctest::Approx(kPi / std::cosh(kPi * t)).epsilon(1e-12));
  const cplx z(2.3, -4.1);
  CHECK(rel(gamma_fn(z + 1.0), z * gamma_fn(z)) < 1e-13);
  CHECK(rel(std::exp(log_gamma(z)), gamma_fn(z)) < 1e-13);
}

TEST_CASE("tanh-sinh resolves endpoint singularities") {
  auto inv_sqrt = [](double v, double) -> cplx { return 1.0 / std::sqrt(v); };
  CHECK(tanh_sinh(inv_sqrt).value.real() == doctest::Approx(2.0).epsilon(1e-12));
  auto log_both = [](double v, double vc) -> cplx { return std::log(v) + std::log(vc); };
  CHECK(tanh_sinh(log_both).value.real() == doctest::Approx(-2.0).epsilon(1e-12));
  auto oscillating = [](double v, double) -> cplx { return std::exp(cplx(0.0, 40.0 * v)); };
  const cplx exact = (std::exp(cplx(0.0, 40.0)) - 1.0) / cplx(0.0, 40.0);
  CHECK(rel(tanh_sinh(oscillating).value, exact) < 1e-11);
}

TEST_CASE("bessel K against Boost for real orders") {
  for (double s : {-2.3, -0.75, 0.2, 0.5, 0.9, 1.0, 1.7, 3.0, 6.5})
    for (double y : {0.05, 0.4, 1.0, 3.3, 12.0, 40.0}) {
      CAPTURE(s);
      CAPTURE(y);
      const double want = boost::math::cyl_bessel_k(s - 0.5, y);
      const BesselValue got = bessel_k_detailed(s, y);
      CHECK(std::abs(got.value - want) <= std::max(got.error, 1e-12 * std::abs(want)) * 4.0);
      CHECK(rel(got.value, want) < 1e-9);
      CHECK(rel(bessel_k_quadrature(s > 0.5 ? s : 1.0 - s, y), want) < 1e-11);
    }
}

TEST_CASE("bessel K symmetries") {
  const cplx s(1.3, 2.2);
  for (double y : {0.2, 2.0, 9.0}) {
    CHECK(std::abs(bessel_k(std::conj(s), y) - std::conj(bessel_k(s, y))) < 1e-13 * std::abs(bessel_k(s, y)));
    // Imaginary order: real value, within the absolute accuracy contract.
    const cplx imag_order = bessel_k(cplx(0.5, 3.0), y);
    CHECK(std::abs(imag_order.imag()) <= 1e-12 * (1.0 + std::abs(imag_order)));
    // K_nu = K_{-nu}
    CHECK(rel(bessel_k(1.0 - s, y), bessel_k(s, y)) < 1e-9);
  }
  CHECK_THROWS_AS(bessel_k(2.0, 0.0), DomainError);
}

TEST_CASE("the standard recurrence sign holds and the swapped one does not") {
  const cplx s(0.8, -1.4);
  const double y = 1.7;
  const cplx k0 = bessel_k_quadrature(s, y), k1 = bessel_k_quadrature(s + 1.0, y),
             k2 = bessel_k_quadrature(s + 2.0, y);
  const cplx factor = (2.0 * s + 1.0) / y;
  CHECK(std::abs(k0 - (k2 - factor * k1)) < 1e-11 * std::abs(k2));
  CHECK(std::abs(k0 - (factor * k1 - k2)) > 1e-3 * std::abs(k0));
}

TEST_CASE("kappa bound on a few points") {
  for (double sigma : {1.0, 2.0, 3.5})
    for (double t : {-2.0, 0.0, 4.0})
      for (double y : {0.05, 1.0, 25.0}) {
        const cplx s(sigma, t);
        const double bound =
            bessel_kappa(s) * std::exp(-y) * (std::pow(y, sigma - 0.5) + std::pow(y, 0.5 - sigma));
        CHECK(std::abs(bessel_k(s, y)) <= bound);
      }
}

TEST_CASE("whittaker function") {
  const UpperHalfPoint z(0.3, 0.8);
  const cplx s(2.5, 0.0);
  const cplx w = whittaker_w(s, 3, z);
  const double arg = 2.0 * kPi * 3.0 * 0.8;
  const cplx expected =
      2.0 * std::sqrt(2.4) * boost::math::cyl_bessel_k(2.0, arg) * std::polar(1.0, 2.0 * kPi * 0.9);
  CHECK(rel(w, expected) < 1e-12);
  CHECK(std::abs(whittaker_w(s, -3, z) - std::conj(w)) < 1e-14);
  CHECK_THROWS_AS(whittaker_w(s, 0, z), DomainError);
}

TEST_CASE("green function matches Legendre Q") {
  // G_a(u) = Q_{a-1}(1 + 2u) / (2 pi) for integer a.
  for (int a : {2, 4})
    for (double u : {1e-200, 1e-30, 1e-6, 0.01, 0.1, 0.24, 0.26, 0.5, 1.0}) {
      CAPTURE(a);
      CAPTURE(u);
      const double want = legendre_q(a - 1, u) / (2.0 * kPi);
      CHECK(green_g(a, u) == doctest::Approx(want).epsilon(1e-10));
    }
  CHECK_THROWS_AS(green_g(2.0, 0.0), DomainError);
  const GreenParameter p(4.0, 2.0);
  for (double u : {0.05, 0.3, 2.0})
    CHECK(green_diff(p, u) == doctest::Approx(green_g(4.0, u) - green_g(2.0, u)).epsilon(1e-10));
  CHECK(std::isfinite(green_diff(p, 0.0)));
}

TEST_CASE("tail lemma sum") {
  const TailLemmaValues v = verify_tail_lemma(0.5, 1.0, 0.8);
  double direct = 0.0;
  for (int k = 1; k < 2000; ++k)
    direct += std::pow(k, 1.0) * std::exp(2.0 * kPi * (0.5 * std::sqrt(double(k)) - 0.8 * k));
  CHECK(v.lhs == doctest::Approx(direct).epsilon(1e-13));
  CHECK(v.rhs > 0.0);
  CHECK_THROWS_AS(verify_tail_lemma(0.5, 1.0, 0.0), DomainError);
}
