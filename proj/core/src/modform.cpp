#include "eisen/modform.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "eisen/errors.hpp"

namespace eisen {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Coefficients of prod_{n>=1} (1 - q^{step n}) up to degree `degree`,
// from Euler's pentagonal number theorem.
std::vector<std::int64_t> euler_product(std::size_t degree, std::int64_t step) {
  std::vector<std::int64_t> out(degree + 1, 0);
  for (std::int64_t k = 0;; ++k) {
    bool any = false;
    for (std::int64_t j : {k, -k}) {
      if (k == 0 && j == 0 && any) continue;  // the k = 0 term appears once
      const std::int64_t e = step * (j * (3 * j - 1) / 2);
      if (e > static_cast<std::int64_t>(degree)) continue;
      out[static_cast<std::size_t>(e)] += (k % 2 == 0) ? 1 : -1;
      any = true;
    }
    if (!any && step * (k * (3 * k - 1) / 2) > static_cast<std::int64_t>(degree)) break;
  }
  return out;
}

std::vector<std::int64_t> multiply(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y,
                                   std::size_t degree) {
  std::vector<std::int64_t> out(degree + 1, 0);
  for (std::size_t i = 0; i <= degree && i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; i + j <= degree && j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return out;
}

// Conservative |a(n)| <= C n bound constant: never below 2 so that terms beyond
// the stored range (|a(n)| <= d(n) sqrt(n) <= 2n) are covered as well.
double growth_of(const std::vector<cplx>& a) {
  double c = 2.0;
  for (std::size_t n = 1; n <= a.size(); ++n) c = std::max(c, std::abs(a[n - 1]) / static_cast<double>(n));
  return c;
}

cplx unit_phase(double x) {
  const double frac = x - std::floor(x);
  return {std::cos(kTwoPi * frac), std::sin(kTwoPi * frac)};
}

}  // namespace

CuspForm::CuspForm(std::int64_t level, std::vector<cplx> coefficients, FormSource source, std::string label)
    : level_(level), coefficients_(std::move(coefficients)), source_(source), label_(std::move(label)) {
  if (level_ < 1) throw std::invalid_argument("form level must be positive");
  if (coefficients_.empty()) throw std::invalid_argument("form needs at least one coefficient");
  growth_ = growth_of(coefficients_);
}

cplx CuspForm::coefficient(std::size_t n) const {
  if (n == 0) return 0.0;
  if (n > coefficients_.size()) throw std::out_of_range("coefficient index beyond stored terms");
  return coefficients_[n - 1];
}

CuspForm eta_product_expansion(std::int64_t level, std::size_t terms) {
  if (level != 11) throw UnsupportedForm("no built-in eta recipe for level " + std::to_string(level));
  if (terms < 1) throw std::invalid_argument("need at least one term");
  // eta(z)^2 eta(11z)^2 = q prod (1-q^n)^2 (1-q^{11n})^2; a(n) is the q^{n-1} coefficient of the product.
  const std::size_t degree = terms - 1;
  const auto p1 = euler_product(degree, 1);
  const auto p11 = euler_product(degree, 11);
  const auto product = multiply(multiply(p1, p1, degree), multiply(p11, p11, degree), degree);
  std::vector<cplx> a(terms);
  for (std::size_t n = 1; n <= terms; ++n) a[n - 1] = static_cast<double>(product[n - 1]);
  return CuspForm(level, std::move(a), FormSource::EtaProduct, "eta(z)^2 eta(11z)^2");
}

double truncation_bound(const CuspForm& f, std::size_t terms, double y) {
  // sum_{n>M} C n q^n = C q^{M+1} (M + 1 - M q) / (1 - q)^2 with q = e^{-2 pi y}.
  const double q = std::exp(-kTwoPi * y);
  const double m = static_cast<double>(terms);
  const double one_minus_q = -std::expm1(-kTwoPi * y);
  return f.growth_constant() * std::exp((m + 1.0) * std::log(q)) * (m + 1.0 - m * q) /
         (one_minus_q * one_minus_q);
}

std::size_t required_terms(const CuspForm& f, double y, double tol) {
  if (!(y > 0.0)) throw DomainError("height must be positive");
  // Geometric growth of the search keeps the cost logarithmic, then bisect.
  std::size_t hi = 1;
  while (truncation_bound(f, hi, y) > tol) {
    if (hi > (std::size_t{1} << 40)) throw PrecisionError("height too small for any expansion length");
    hi *= 2;
  }
  std::size_t lo = hi / 2;
  if (truncation_bound(f, lo, y) <= tol) return lo;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (truncation_bound(f, mid, y) <= tol ? hi : lo) = mid;
  }
  return hi;
}

double minimum_height(const CuspForm& f, double tol) {
  double lo = 1e-6;
  double hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    (truncation_bound(f, f.terms(), mid) <= tol ? hi : lo) = mid;
  }
  return hi;
}

namespace {

template <class Coefficient>
cplx horner(std::size_t terms, const UpperHalfPoint& z, Coefficient&& coefficient) {
  const cplx q = std::exp(-kTwoPi * z.y()) * unit_phase(z.x());
  cplx acc = 0.0;
  for (std::size_t n = terms; n >= 1; --n) acc = acc * q + coefficient(n);
  return acc * q;
}

std::size_t checked_terms(const CuspForm& f, double y) {
  const std::size_t needed = required_terms(f, y);
  if (needed > f.terms())
    throw PrecisionError("q-expansion too short at height " + std::to_string(y) + ": need " +
                             std::to_string(needed) + " terms",
                         needed);
  return needed;
}

}  // namespace

cplx eval_form(const CuspForm& f, const UpperHalfPoint& z) {
  const std::size_t m = checked_terms(f, z.y());
  const auto& a = f.coefficients();
  return horner(m, z, [&](std::size_t n) { return a[n - 1]; });
}

cplx eval_antiderivative(const CuspForm& f, const UpperHalfPoint& z) {
  const std::size_t m = checked_terms(f, z.y());
  const auto& a = f.coefficients();
  const cplx two_pi_i(0.0, kTwoPi);
  return horner(m, z, [&](std::size_t n) { return a[n - 1] / (two_pi_i * static_cast<double>(n)); });
}

cplx cusp_value(const CuspForm& f, std::int64_t p, std::int64_t q) {
  if (q == 0) return 0.0;
  if (q < 0) {
    p = -p;
    q = -q;
  }
  // Near p/q the form decays like exp(-2 pi / (w q^2 t)) in the local parameter;
  // w <= level bounds the cusp width.
  const double w = static_cast<double>(f.level());
  const double qd = static_cast<double>(q);
  const double t = kTwoPi / (40.0 * w * qd * qd);
  const double x = static_cast<double>(p) / qd;
  const cplx near = eval_antiderivative(f, {x, t});
  const cplx nearer = eval_antiderivative(f, {x, 0.8 * t});
  if (std::abs(near - nearer) > 1e-11)
    throw PrecisionError("cusp value did not settle; lengthen the expansion");
  return nearer;
}

Antiderivative::Antiderivative(std::shared_ptr<const CuspForm> form, const Cusp& basepoint)
    : form_(std::move(form)), basepoint_(basepoint) {
  offset_ = basepoint_.is_infinity() ? cplx{} : eisen::cusp_value(*form_, basepoint_.numerator, basepoint_.denominator);
}

cplx Antiderivative::operator()(const UpperHalfPoint& z) const { return eval_antiderivative(*form_, z) - offset_; }

cplx eval_antiderivative(const Antiderivative& F, const UpperHalfPoint& z) { return F(z); }

cplx modular_symbol_at(const GroupElement& gamma, const CuspForm& f, double h) {
  const GroupElement g = gamma.sign_normalized();
  if (g.c() == 0) return 0.0;
  const double c = static_cast<double>(g.c());
  // z0 = (-d + i h)/c has image a/c + i/(c h).
  const UpperHalfPoint z0(-static_cast<double>(g.d()) / c, h / c);
  const UpperHalfPoint image(static_cast<double>(g.a()) / c, 1.0 / (c * h));
  return eval_antiderivative(f, image) - eval_antiderivative(f, z0);
}

cplx modular_symbol(const GroupElement& gamma, const CuspForm& f) {
  const cplx value = modular_symbol_at(gamma, f, 1.0);
#ifndef NDEBUG
  const GroupElement g = gamma.sign_normalized();
  if (g.c() != 0 && required_terms(f, 0.5 / static_cast<double>(g.c())) <= f.terms()) {
    const cplx other = modular_symbol_at(gamma, f, 2.0);
    if (std::abs(other - value) > 1e-10) throw std::logic_error("modular symbol depends on the basepoint");
  }
#endif
  return value;
}

ModularSymbolCache::ModularSymbolCache(std::shared_ptr<const CuspForm> form,
                                       std::shared_ptr<const PeriodTable> table)
    : form_(std::move(form)), table_(std::move(table)) {}

cplx ModularSymbolCache::get(const GroupElement& gamma) const {
  const GroupElement key = gamma.sign_normalized();
  {
    std::shared_lock lock(mutex_);
    if (auto it = values_.find(key); it != values_.end()) return it->second;
  }
  const cplx value = table_ ? table_->symbol(key) : modular_symbol(key, *form_);
  std::unique_lock lock(mutex_);
  return values_.emplace(key, value).first->second;
}

std::size_t ModularSymbolCache::size() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

}  // namespace eisen
