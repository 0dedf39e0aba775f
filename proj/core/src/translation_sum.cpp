#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "eisen/eisen.hpp"
#include "eisen/errors.hpp"

namespace eisen {

namespace {

// B_{2j} / (2j)! for j = 1..10.
constexpr std::array<double, 10> kBernoulliOverFactorial{
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0};

}  // namespace

cplx hurwitz_tail(cplx p, double a) {
  const double log_a = std::log(a);
  const cplx a_pow = std::exp(-p * log_a);
  cplx sum = a * a_pow / (p - 1.0) + 0.5 * a_pow;
  cplx rising = p;
  cplx power = a_pow / a;
  const double inv_a2 = 1.0 / (a * a);
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    const cplx term = kBernoulliOverFactorial[j] * rising * power;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    const double k = 2.0 * static_cast<double>(j + 1);
    rising *= (p + k - 1.0) * (p + k);
    power *= inv_a2;
  }
  return sum;
}

TranslationSum::TranslationSum(cplx s, double Y)
    : s_(s), Y_(Y), log_Y_(std::log(Y)), real_(s.imag() == 0.0) {
  if (!(Y > 0.0)) throw DomainError("translation sum needs Y > 0");
  if (!(s.real() > 0.5)) throw DomainError("translation sum needs Re s > 1/2");
  if (real_) {
    const double twice = 2.0 * s.real();
    if (twice == std::round(twice) && twice >= 2.0 && twice <= 16.0) half_power_ = static_cast<int>(twice);
  }
  const long direct = 40 + static_cast<long>(std::ceil(6.0 * Y));
  const cplx y_pow = std::exp(s * log_Y_);
  const double ratio = Y * Y;

  // Y^s sum_{k>=0} ((a+k)^2 + Y^2)^{-s} = Y^s sum_j binom(-s, j) Y^{2j} zeta(2s+2j, a).
  auto tail = [&](double a) {
    cplx sum = 0.0;
    cplx binom = 1.0;
    double y_power = 1.0;
    for (int j = 0; j < 200; ++j) {
      const cplx term = binom * y_power * hurwitz_tail(2.0 * s + 2.0 * j, a);
      sum += term;
      if (j > 0 && std::abs(term) < 1e-18 * std::abs(sum)) break;
      binom *= -(s + static_cast<double>(j)) / static_cast<double>(j + 1);
      y_power *= ratio;
    }
    return y_pow * sum;
  };
  auto term = [&](double u) { return std::exp(-s * (std::log(u * u + Y * Y) - log_Y_)); };
  auto far = [&](double X) {
    cplx sum = 0.0;
    for (long n = 1; n <= direct; ++n) sum += term(X + static_cast<double>(n));
    for (long m = 2; m <= direct + 1; ++m) sum += term(static_cast<double>(m) - X);
    sum += tail(X + static_cast<double>(direct + 1));
    sum += tail(static_cast<double>(direct + 2) - X);
    return sum;
  };

  // The far sum is analytic within distance one of [0, 1], so on pieces of
  // width 1/8 a degree-14 interpolant is exact to rounding.
  constexpr int nodes = kDegree + 1;
  cheb_.assign(static_cast<std::size_t>(kPieces * nodes), 0.0);
  std::array<cplx, nodes> samples{};
  for (int p = 0; p < kPieces; ++p) {
    for (int k = 0; k < nodes; ++k) {
      const double t = std::cos(std::numbers::pi * (k + 0.5) / nodes);
      samples[static_cast<std::size_t>(k)] = far((p + 0.5 * (1.0 + t)) / kPieces);
    }
    for (int j = 0; j < nodes; ++j) {
      cplx c = 0.0;
      for (int k = 0; k < nodes; ++k)
        c += samples[static_cast<std::size_t>(k)] * std::cos(std::numbers::pi * j * (k + 0.5) / nodes);
      cheb_[static_cast<std::size_t>(p * nodes + j)] = c * (2.0 / nodes);
    }
    cheb_[static_cast<std::size_t>(p * nodes)] *= 0.5;
  }
  if (real_) {
    cheb_real_.resize(cheb_.size());
    for (std::size_t j = 0; j < cheb_.size(); ++j) cheb_real_[j] = cheb_[j].real();
  }
}

cplx TranslationSum::near(double u) const {
  const double q = (u * u + Y_ * Y_) / Y_;
  if (half_power_ > 0) {
    const double r = 1.0 / q;
    double v = 1.0;
    for (int k = 0; k < half_power_ / 2; ++k) v *= r;
    if (half_power_ % 2) v *= std::sqrt(r);
    return v;
  }
  const double log_q = std::log(q);
  if (real_) return std::exp(-s_.real() * log_q);
  return std::polar(std::exp(-s_.real() * log_q), -s_.imag() * log_q);
}

cplx TranslationSum::operator()(double X) const {
  constexpr int nodes = kDegree + 1;
  const double x = X - std::floor(X);
  const int piece = std::min(static_cast<int>(x * kPieces), kPieces - 1);
  const double t = 2.0 * (x * kPieces - piece) - 1.0;
  const double t2 = 2.0 * t;
  const std::size_t base = static_cast<std::size_t>(piece * nodes);
  if (real_) {
    const double* c = cheb_real_.data() + base;
    double b1 = 0.0, b2 = 0.0;
    for (int j = kDegree; j >= 1; --j) {
      const double b0 = c[j] + t2 * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    const double far = c[0] + t * b1 - b2;
    return near(x).real() + near(x - 1.0).real() + far;
  }
  const cplx* c = cheb_.data() + base;
  cplx b1 = 0.0, b2 = 0.0;
  for (int j = kDegree; j >= 1; --j) {
    const cplx b0 = c[j] + t2 * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  const cplx far = c[0] + t * b1 - b2;
  return near(x) + near(x - 1.0) + far;
}

cplx TranslationSum::direct(cplx s, double X, double Y, long terms) {
  cplx sum = 0.0;
  const double log_Y = std::log(Y);
  for (long n = -terms; n <= terms; ++n) {
    const double u = X + static_cast<double>(n);
    sum += std::exp(-s * (std::log(u * u + Y * Y) - log_Y));
  }
  return sum;
}

}  // namespace eisen
