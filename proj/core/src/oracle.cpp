#include "eisen/oracle.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "eisen/eisen.hpp"
#include "eisen/errors.hpp"
#include "eisen/specfun.hpp"

namespace eisen::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

cplx power(double base, cplx w) { return std::exp(w * std::log(base)); }

void require_prime_cusp(std::size_t a) {
  if (a > 1) throw std::out_of_range("prime level has two cusps");
}

// Divisor sums of d^{1-w} split by whether p divides d.
std::pair<cplx, cplx> split_sigma(std::int64_t p, std::int64_t k, cplx w) {
  cplx with_p = 0.0, without_p = 0.0;
  for (std::int64_t d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    const cplx term = power(static_cast<double>(d), 1.0 - w);
    if (d % p == 0)
      with_p += term;
    else
      without_p += term;
  }
  return {with_p, without_p};
}

}  // namespace

cplx riemann_zeta(cplx s) {
  if (s == cplx{1.0}) throw DomainError("zeta has a pole at s = 1");
  if (s.real() < 0.5) {
    // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s) zeta(1 - s)
    return power(2.0, s) * power(kPi, s - 1.0) * std::sin(0.5 * kPi * s) * gamma_fn(1.0 - s) *
           riemann_zeta(1.0 - s);
  }
  // Direct terms below N, Euler-Maclaurin from N.  With ten Bernoulli terms the
  // remainder is below |(s)_21| / (2 pi N)^21, far under 1e-13 for N >= 30 + |Im s|.
  const long N = 30 + static_cast<long>(std::ceil(std::abs(s.imag())));
  cplx sum = 0.0;
  for (long n = 1; n < N; ++n) sum += power(static_cast<double>(n), -s);
  return sum + hurwitz_tail(s, static_cast<double>(N));
}

cplx divisor_sigma(cplx w, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("divisor sum needs k >= 1");
  cplx sum = 0.0;
  for (std::int64_t d = 1; d <= k; ++d)
    if (k % d == 0) sum += power(static_cast<double>(d), w);
  return sum;
}

cplx sl2_scattering(cplx s) {
  return std::sqrt(kPi) * gamma_fn(s - 0.5) * riemann_zeta(2.0 * s - 1.0) / (gamma_fn(s) * riemann_zeta(2.0 * s));
}

cplx sl2_coefficient(std::int64_t k, cplx s) {
  if (k == 0) throw std::invalid_argument("k must be nonzero");
  const std::int64_t ak = k < 0 ? -k : k;
  return power(kPi, s) * power(static_cast<double>(ak), s - 1.0) * divisor_sigma(1.0 - 2.0 * s, ak) /
         (gamma_fn(s) * riemann_zeta(2.0 * s));
}

cplx sl2_expansion(const UpperHalfPoint& z, cplx s, std::int64_t K) {
  cplx sum = power(z.y(), s) + sl2_scattering(s) * power(z.y(), 1.0 - s);
  for (std::int64_t k = 1; k <= K; ++k) {
    const cplx c = sl2_coefficient(k, s);
    sum += c * whittaker_w(s, k, z);
    sum += c * whittaker_w(s, -k, z);
  }
  return sum;
}

double sl2_lattice_sum(const UpperHalfPoint& z, double s, double R) {
  if (!(s > 1.0)) throw DomainError("lattice sum needs s > 1");
  const double x = z.x(), y = z.y();
  const auto c_max = static_cast<std::int64_t>(std::floor(R / y));
  double sum = 0.0, comp = 0.0;
  auto add = [&](double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  };
  // Pairs with c > 0 once each; c = 0 contributes d = +-1, halved to one term.
  add(std::pow(y, s));
  for (std::int64_t c = 1; c <= c_max; ++c) {
    const double cy = static_cast<double>(c) * y;
    const double cx = static_cast<double>(c) * x;
    const double span = std::sqrt(std::max(0.0, R * R - cy * cy));
    const auto d_lo = static_cast<std::int64_t>(std::ceil(-cx - span));
    const auto d_hi = static_cast<std::int64_t>(std::floor(-cx + span));
    for (std::int64_t d = d_lo; d <= d_hi; ++d) {
      if (std::gcd(c, d) != 1) continue;
      const double re = cx + static_cast<double>(d);
      add(std::pow(y / (re * re + cy * cy), s));
    }
  }
  // Primitive vectors of the lattice Z z + Z have density 6 / (pi^2 y).
  const double tail = 0.5 * (6.0 / (kPi * kPi * y)) * std::pow(y, s) * 2.0 * kPi * std::pow(R, 2.0 - 2.0 * s) /
                      (2.0 * s - 2.0);
  return sum + comp + tail;
}

Eigen::Matrix2cd gamma0_prime_scattering(std::int64_t p, cplx s) {
  const double pd = static_cast<double>(p);
  const cplx scale = sl2_scattering(s) / (power(pd, 2.0 * s) - 1.0);
  const cplx off = power(pd, s) - power(pd, 1.0 - s);
  Eigen::Matrix2cd m;
  m << scale * (pd - 1.0), scale * off, scale * off, scale * (pd - 1.0);
  return m;
}

cplx gamma0_prime_coefficient(std::int64_t p, std::size_t a, std::size_t b, std::int64_t k, cplx s) {
  require_prime_cusp(a);
  require_prime_cusp(b);
  if (k == 0) throw std::invalid_argument("k must be nonzero");
  const std::int64_t ak = k < 0 ? -k : k;
  const double pd = static_cast<double>(p);
  const cplx w = 2.0 * s;
  const auto [with_p, without_p] = split_sigma(p, ak, w);
  const cplx pw = power(pd, -w);
  cplx dirichlet;
  if (a == b)
    dirichlet = (with_p - pw / (1.0 - pw) * without_p) / riemann_zeta(w);
  else
    dirichlet = power(pd, -s) * without_p / (riemann_zeta(w) * (1.0 - pw));
  return power(kPi, s) * power(static_cast<double>(ak), s - 1.0) / gamma_fn(s) * dirichlet;
}

cplx gamma0_prime_expansion(std::int64_t p, std::size_t a, std::size_t b, const UpperHalfPoint& z, cplx s,
                            std::int64_t K) {
  require_prime_cusp(a);
  require_prime_cusp(b);
  const Eigen::Matrix2cd phi = gamma0_prime_scattering(p, s);
  cplx sum = phi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) * power(z.y(), 1.0 - s);
  if (a == b) sum += power(z.y(), s);
  for (std::int64_t k = 1; k <= K; ++k) {
    const cplx c = gamma0_prime_coefficient(p, a, b, k, s);
    sum += c * (whittaker_w(s, k, z) + whittaker_w(s, -k, z));
  }
  return sum;
}

}  // namespace eisen::oracle
