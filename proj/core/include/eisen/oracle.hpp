#pragma once

// Closed-form classical expansions, kept apart from the series machinery so
// each side can check the other.  Everything here is the weight-zero
// Eisenstein series with trivial character, (m, n) = (0, 0).

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "eisen/arithgroup.hpp"

namespace eisen::oracle {

// Euler-Maclaurin with the reflection formula for Re s < 1/2.
cplx riemann_zeta(cplx s);

// sum_{d | k} d^w for k >= 1.
cplx divisor_sigma(cplx w, std::int64_t k);

// SL2(Z): E(z,s) = y^s + phi(s) y^{1-s} + sum_{k != 0} phi(k,s) W_s(kz).
cplx sl2_scattering(cplx s);
cplx sl2_coefficient(std::int64_t k, cplx s);
// The expansion above truncated at |k| <= K.
cplx sl2_expansion(const UpperHalfPoint& z, cplx s, std::int64_t K);

// (1/2) sum_{gcd(c,d)=1, |cz+d| <= R} y^s |cz+d|^{-2s} plus the mean-density
// tail beyond R.  Real s > 1 only.
double sl2_lattice_sum(const UpperHalfPoint& z, double s, double R);

// Gamma_0(p), p prime, cusps ordered (inf, 0) with the standard scaling
// matrices.  Entry (a, b) is the constant-term coefficient of E_a at cusp b.
Eigen::Matrix2cd gamma0_prime_scattering(std::int64_t p, cplx s);
// k-th coefficient of E_a at cusp b; a, b in {0 (inf), 1 (cusp 0)}.
cplx gamma0_prime_coefficient(std::int64_t p, std::size_t a, std::size_t b, std::int64_t k, cplx s);
// E_a(sigma_b z, s) from the expansion truncated at |k| <= K.
cplx gamma0_prime_expansion(std::int64_t p, std::size_t a, std::size_t b, const UpperHalfPoint& z, cplx s,
                            std::int64_t K);

}  // namespace eisen::oracle
