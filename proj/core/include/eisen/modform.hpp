#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "eisen/arithgroup.hpp"

namespace eisen {

enum class FormSource { EtaProduct, ExplicitList };

// Weight-2 cusp form f = sum_{n>=1} a(n) q^n stored to a finite number of terms.
class CuspForm {
 public:
  CuspForm(std::int64_t level, std::vector<cplx> coefficients, FormSource source, std::string label);

  std::int64_t level() const { return level_; }
  std::size_t terms() const { return coefficients_.size(); }
  // a(n) for 1 <= n <= terms(); a(0) = 0.
  cplx coefficient(std::size_t n) const;
  const std::vector<cplx>& coefficients() const { return coefficients_; }
  FormSource source() const { return source_; }
  const std::string& label() const { return label_; }
  // max |a(n)| / n over the stored terms; used by the truncation bound.
  double growth_constant() const { return growth_; }

 private:
  std::int64_t level_;
  std::vector<cplx> coefficients_;
  FormSource source_;
  std::string label_;
  double growth_;
};

// eta(z)^2 eta(11z)^2, the only built-in recipe.
CuspForm eta_product_expansion(std::int64_t level, std::size_t terms);

// { "level": N, "coefficients": [[re,im],...], "label": "..." } or
// { "level": 11, "eta_product": true, "terms": M }
CuspForm form_from_json(std::string_view text);

inline constexpr double kSeriesTolerance = 1e-12;

// Terms needed so that sum_{n>M} n C e^{-2 pi n y} <= tol.
std::size_t required_terms(const CuspForm& f, double y, double tol = kSeriesTolerance);
// Smallest height at which the stored expansion meets the tolerance.
double minimum_height(const CuspForm& f, double tol = kSeriesTolerance);
// Bound on sum_{n>M} |a(n)| e^{-2 pi n y}.
double truncation_bound(const CuspForm& f, std::size_t terms, double y);

cplx eval_form(const CuspForm& f, const UpperHalfPoint& z);

// F_a(z) = integral of f from the cusp a to z.  The cusp enters only through
// the constant offset F_a = F_inf - F_inf(a).
class Antiderivative {
 public:
  Antiderivative(std::shared_ptr<const CuspForm> form, const Cusp& basepoint);

  const CuspForm& form() const { return *form_; }
  const Cusp& basepoint() const { return basepoint_; }
  // F_inf(a), the boundary value of the q-series antiderivative at the cusp.
  cplx cusp_value() const { return offset_; }
  cplx operator()(const UpperHalfPoint& z) const;

 private:
  std::shared_ptr<const CuspForm> form_;
  Cusp basepoint_;
  cplx offset_;
};

// F_inf(z) = sum a(n)/(2 pi i n) q^n.
cplx eval_antiderivative(const CuspForm& f, const UpperHalfPoint& z);
cplx eval_antiderivative(const Antiderivative& F, const UpperHalfPoint& z);

// Limit of F_inf at a rational cusp p/q (q > 0), approached vertically.
cplx cusp_value(const CuspForm& f, std::int64_t p, std::int64_t q);

// <gamma, f> = F(gamma z0) - F(z0) with z0 = (-d + i)/c.
cplx modular_symbol(const GroupElement& gamma, const CuspForm& f);
// Same integral along the basepoint z0 = (-d + i h)/c for a chosen h > 0.
cplx modular_symbol_at(const GroupElement& gamma, const CuspForm& f, double h);

// Fast symbols from continued fractions.  Each unimodular edge between
// consecutive convergents contributes a period indexed by P^1(Z/N); the periods
// are fitted from the two- and three-term relations plus directly computed
// symbols, then validated on a held-out set.
class PeriodTable {
 public:
  PeriodTable(std::shared_ptr<const CuspForm> form, std::int64_t level);

  cplx symbol(const GroupElement& gamma) const;
  // Integral of f from infinity to p/q along the continued-fraction path.
  cplx path_integral(std::int64_t p, std::int64_t q) const;
  double fit_residual() const { return fit_residual_; }
  double validation_error() const { return validation_error_; }
  std::size_t fitted_symbols() const { return fitted_; }

 private:
  std::shared_ptr<const CuspForm> form_;
  ProjectiveLine p1_;
  std::vector<cplx> edge_;
  double fit_residual_{0};
  double validation_error_{0};
  std::size_t fitted_ = 0;
};

// Unitary character on Gamma_0(N) acting through the lower-right entry.
class CharacterSpec {
 public:
  static CharacterSpec trivial();
  // Values on Z/N; must be multiplicative, unimodular on units and zero elsewhere.
  static CharacterSpec dirichlet(std::int64_t modulus, std::vector<cplx> values);
  // The character sending a fixed primitive root of the prime p to e^{2 pi i j/(p-1)}.
  static CharacterSpec dirichlet_prime(std::int64_t p, std::int64_t j);

  bool is_trivial() const { return values_.empty(); }
  std::int64_t modulus() const { return modulus_; }
  cplx operator()(const GroupElement& gamma) const;
  // chi(-I) = 1 and chi = 1 on every cusp stabilizer.
  void validate(const Gamma0& group) const;
  std::string describe() const;

 private:
  std::int64_t modulus_{1};
  std::vector<cplx> values_;
  std::string description_{"trivial"};
};

// Thread-safe memo of symbols keyed by the sign-normalized integer matrix.
class ModularSymbolCache {
 public:
  explicit ModularSymbolCache(std::shared_ptr<const CuspForm> form,
                              std::shared_ptr<const PeriodTable> table = nullptr);

  cplx get(const GroupElement& gamma) const;
  std::size_t size() const;
  const CuspForm& form() const { return *form_; }

 private:
  std::shared_ptr<const CuspForm> form_;
  std::shared_ptr<const PeriodTable> table_;
  mutable std::shared_mutex mutex_;
  mutable std::map<GroupElement, cplx> values_;
};

}  // namespace eisen
