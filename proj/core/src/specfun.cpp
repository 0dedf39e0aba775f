#include "eisen/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "eisen/errors.hpp"

namespace eisen {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cplx log_gamma_right(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// Node abscissae run over t in [-kTMax, kTMax]; beyond it the weights underflow.
constexpr double kTMax = 6.0;

struct Node {
  double v;
  double vc;
  double weight;
};

Node node_at(double t) {
  const double u = 0.5 * kPi * std::sinh(t);
  // v = 1 / (1 + e^{-2u}), 1 - v = 1 / (1 + e^{2u}); both without cancellation.
  const double v = 1.0 / (1.0 + std::exp(-2.0 * u));
  const double vc = 1.0 / (1.0 + std::exp(2.0 * u));
  return {v, vc, kPi * std::cosh(t) * v * vc};
}

struct LevelSums {
  cplx sum;
  double abs_sum{0};
  std::size_t count{0};
};

// Adds f over the nodes that are new at `level` (all nodes for level 0).
void add_level(const std::function<cplx(double, double)>& f, int level, LevelSums& acc) {
  const double h = std::ldexp(1.0, -level);
  const auto limit = static_cast<long>(std::floor(kTMax / h));
  for (long j = -limit; j <= limit; ++j) {
    if (level > 0 && j % 2 == 0) continue;
    const Node n = node_at(static_cast<double>(j) * h);
    if (n.v <= 0.0 || n.vc <= 0.0 || n.weight == 0.0) continue;
    const cplx value = f(n.v, n.vc) * n.weight;
    acc.sum += value;
    acc.abs_sum += std::abs(value);
    ++acc.count;
  }
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma_right(1.0 - z);
  }
  return log_gamma_right(z);
}

cplx gamma_fn(cplx z) {
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * std::exp(log_gamma_right(1.0 - z)));
  return std::exp(log_gamma_right(z));
}

QuadratureResult tanh_sinh(const std::function<cplx(double, double)>& f, double rel_tol, int max_level) {
  LevelSums acc;
  add_level(f, 0, acc);
  cplx previous = acc.sum;
  QuadratureResult out;
  for (int level = 1; level <= max_level; ++level) {
    add_level(f, level, acc);
    const double h = std::ldexp(1.0, -level);
    const cplx current = acc.sum * h;
    out.value = current;
    out.magnitude = acc.abs_sum * h;
    out.error = std::abs(current - previous);
    out.level = level;
    out.evaluations = acc.count;
    const double scale = std::max(std::abs(current), out.magnitude);
    if (level >= 3 && out.error <= rel_tol * scale) return out;
    previous = current;
  }
  throw PrecisionError("tanh-sinh quadrature did not converge");
}

QuadratureResult tanh_sinh_fixed(const std::function<cplx(double, double)>& f, int level) {
  LevelSums acc;
  add_level(f, 0, acc);
  cplx previous = acc.sum;
  QuadratureResult out;
  out.value = previous;
  for (int l = 1; l <= level; ++l) {
    add_level(f, l, acc);
    const double h = std::ldexp(1.0, -l);
    out.value = acc.sum * h;
    out.error = std::abs(out.value - previous);
    previous = out.value;
  }
  out.magnitude = acc.abs_sum * std::ldexp(1.0, -level);
  out.level = level;
  out.evaluations = acc.count;
  return out;
}

namespace {

// K_{s-1/2}(y) = sqrt(pi)/Gamma(s) 2^{1/2-s} y^{-1/2} e^{-y} int_0^inf w^{s-1}(w/y+2)^{s-1} e^{-w} dw,
// integrated over v = w/(1+w).
QuadratureResult bessel_integral(cplx s, double y) {
  const cplx sm1 = s - 1.0;
  auto integrand = [=](double v, double vc) -> cplx {
    const double w = v / vc;
    if (w > 740.0) return 0.0;
    const double log_w = std::log(v) - std::log(vc);
    const double log_shift = std::log(w / y + 2.0);
    return std::exp(sm1 * (log_w + log_shift) - w - 2.0 * std::log(vc));
  };
  return tanh_sinh(integrand, 1e-13, 14);
}

cplx bessel_prefactor(cplx s, double y) {
  return std::exp(0.5 * std::log(kPi) - log_gamma(s) + (0.5 - s) * std::log(2.0) - 0.5 * std::log(y) - y);
}

}  // namespace

cplx bessel_k_quadrature(cplx s, double y) {
  if (!(y > 0.0)) throw DomainError("bessel argument must be positive");
  if (!(s.real() > 0.0)) throw DomainError("direct bessel quadrature needs Re s > 0");
  return bessel_prefactor(s, y) * bessel_integral(s, y).value;
}

BesselValue bessel_k_detailed(cplx s, double y) {
  if (!(y > 0.0)) throw DomainError("bessel argument must be positive");
  auto direct = [&](cplx t) {
    const QuadratureResult q = bessel_integral(t, y);
    const cplx pre = bessel_prefactor(t, y);
    // Two-level agreement, a rounding floor on the scale of the integrand, and
    // rounding in the prefactor.
    const cplx value = pre * q.value;
    const double err = std::abs(pre) * (q.error + 1e-15 * q.magnitude) + 1e-14 * std::abs(value);
    return std::pair<cplx, double>{value, err};
  };
  if (s.real() >= 1.0) {
    auto [value, err] = direct(s);
    return {value, err, 0};
  }
  const int steps = static_cast<int>(std::ceil(1.0 - s.real()));
  auto [upper, upper_err] = direct(s + static_cast<double>(steps) + 1.0);
  auto [lower, lower_err] = direct(s + static_cast<double>(steps));
  // Downward: K(s+j) = K(s+j+2) - ((2(s+j)+1)/y) K(s+j+1).
  for (int j = steps - 1; j >= 0; --j) {
    const cplx factor = (2.0 * (s + static_cast<double>(j)) + 1.0) / y;
    const cplx next = upper - factor * lower;
    const double next_err = upper_err + std::abs(factor) * lower_err +
                            1e-16 * (std::abs(upper) + std::abs(factor * lower));
    upper = lower;
    upper_err = lower_err;
    lower = next;
    lower_err = next_err;
  }
  return {lower, lower_err, steps + 1};
}

cplx bessel_k(cplx s, double y) { return bessel_k_detailed(s, y).value; }

double bessel_kappa(cplx s) {
  const double sigma = s.real();
  return std::sqrt(kPi) * std::pow(3.0, sigma - 1.0) * (1.0 + std::abs(gamma_fn(2.0 * sigma - 1.0))) /
         std::abs(gamma_fn(s));
}

cplx whittaker_w(cplx s, std::int64_t k, const UpperHalfPoint& z) {
  if (k == 0) throw DomainError("whittaker function needs k != 0");
  const double ak = std::abs(static_cast<double>(k));
  const double arg = 2.0 * kPi * ak * z.y();
  const double frac = static_cast<double>(k) * z.x() - std::floor(static_cast<double>(k) * z.x());
  const cplx phase = std::polar(1.0, 2.0 * kPi * frac);
  return 2.0 * std::sqrt(ak * z.y()) * bessel_k(s, arg) * phase;
}

TailLemmaValues verify_tail_lemma(double D, double r, double y) {
  if (!(y > 0.0)) throw DomainError("tail lemma needs y > 0");
  if (D < 0.0 || r < 0.0) throw DomainError("tail lemma needs D, r >= 0");
  auto term = [&](double k) { return std::exp(r * std::log(k) + 2.0 * kPi * (D * std::sqrt(k) - y * k)); };
  double lhs = 0.0;
  for (double k = 1.0;; k += 1.0) {
    const double t = term(k);
    lhs += t;
    // Past the peak the ratio of successive terms is at most rho(k), which decreases in k.
    const double rho = std::exp(r * std::log1p(1.0 / k) + 2.0 * kPi * (D / (2.0 * std::sqrt(k)) - y));
    if (rho < 1.0 && t * rho / (1.0 - rho) <= 1e-14) break;
    if (k > 1e9) throw PrecisionError("tail lemma sum did not settle");
  }
  const double rhs = std::exp(-2.0 * kPi * y) *
                     (1.0 + std::exp(-kPi * y) / std::pow(y, r + 1.0) +
                      std::exp(8.0 * kPi * D * D / y) / std::pow(y, 2.0 * r + 2.0));
  return {lhs, rhs};
}

}  // namespace eisen
