#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>

#include "eisen/errors.hpp"
#include "eisen/modform.hpp"

using namespace eisen;

namespace {

// q prod (1 - q^n)^2 (1 - q^{11n})^2 by plain truncated multiplication.
std::vector<long> naive_eta_product(std::size_t terms) {
  std::vector<long> poly(terms + 1, 0);
  poly[0] = 1;
  auto times_one_minus = [&](std::size_t k) {
    for (std::size_t i = terms; i >= k; --i) poly[i] -= poly[i - k];
  };
  for (std::size_t n = 1; n <= terms; ++n) {
    times_one_minus(n);
    times_one_minus(n);
    if (11 * n <= terms) {
      times_one_minus(11 * n);
      times_one_minus(11 * n);
    }
  }
  std::vector<long> out(terms + 1, 0);  // out[n] = a(n)
  for (std::size_t n = 1; n <= terms; ++n) out[n] = poly[n - 1];
  return out;
}

std::shared_ptr<const CuspForm> level11_form() {
  static const auto f = std::make_shared<const CuspForm>(eta_product_expansion(11, 400));
  return f;
}

// Enough terms for direct symbols with bottom-left entries near 100.
std::shared_ptr<const CuspForm> long_level11_form() {
  static const auto f = std::make_shared<const CuspForm>(eta_product_expansion(11, 1500));
  return f;
}

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("eta product coefficients") {
  const auto& f = *level11_form();
  const auto naive = naive_eta_product(400);
  for (std::size_t n = 1; n <= 400; ++n) {
    CAPTURE(n);
    CHECK(f.coefficient(n) == cplx(static_cast<double>(naive[n]), 0.0));
  }
  // Hecke eigenform: multiplicative, a(p^2) = a(p)^2 - p off the level, Hasse bound.
  for (std::size_t m = 2; m <= 20; ++m)
    for (std::size_t n = 2; n <= 20; ++n)
      if (std::gcd(m, n) == 1) CHECK(f.coefficient(m * n) == f.coefficient(m) * f.coefficient(n));
  for (std::size_t p = 2; p <= 19; ++p) {
    if (!is_prime(p) || p == 11) continue;
    CHECK(f.coefficient(p * p) == f.coefficient(p) * f.coefficient(p) - double(p));
    CHECK(std::abs(f.coefficient(p)) <= 2.0 * std::sqrt(double(p)));
  }
  CHECK_THROWS(eta_product_expansion(13, 10));
}

TEST_CASE("form evaluation transforms with weight two") {
  const auto& f = *level11_form();
  const GroupElement g(4, 1, 11, 3);
  // |cz + d| near 1 keeps both points high enough for the stored terms.
  const UpperHalfPoint z(-3.0 / 11.0 + 0.01, 0.09);
  const cplx cz_d = 11.0 * z.as_complex() + 3.0;
  const cplx expected = cz_d * cz_d * eval_form(f, z);
  CHECK(std::abs(eval_form(f, mobius(g, z)) - expected) < 1e-10 * std::abs(expected));
}

TEST_CASE("modular symbols are path independent homomorphisms") {
  const auto f = long_level11_form();
  const GroupElement g(4, 1, 11, 3), h(2, 1, 11, 6);
  const cplx sg = modular_symbol(g, *f);
  CHECK(std::abs(sg - modular_symbol_at(g, *f, 0.4)) < 1e-10);
  CHECK(std::abs(modular_symbol(g * h, *f) - sg - modular_symbol(h, *f)) < 1e-10);
  // Parabolic elements fixing the cusps have zero symbol.
  CHECK(std::abs(modular_symbol(GroupElement(1, 0, 11, 1), *f)) < 1e-10);
  CHECK(std::abs(modular_symbol(GroupElement::translation(3), *f)) < 1e-12);

  const PeriodTable table(f, 11);
  CHECK(table.validation_error() < 1e-9);
  for (const GroupElement& e : {g, h, g * h, GroupElement(10, 3, 33, 10), GroupElement(-6, 5, -11, 9)})
    CHECK(std::abs(table.symbol(e) - modular_symbol(e, *f)) < 1e-9);
}

TEST_CASE("antiderivative at a cusp is the limit of the q-series") {
  const auto f = long_level11_form();
  const cplx at_zero = cusp_value(*f, 0, 1);
  CHECK(std::abs(eval_antiderivative(*f, UpperHalfPoint(0.0, 0.02)) - at_zero) < 1e-3);
  const Antiderivative F(f, Gamma0(11).cusp(1));
  CHECK(std::abs(F(UpperHalfPoint(0.2, 0.7)) -
                 (eval_antiderivative(*f, UpperHalfPoint(0.2, 0.7)) - at_zero)) < 1e-12);
}

TEST_CASE("truncation bookkeeping") {
  const auto& f = *level11_form();
  const double y = 0.3;
  const std::size_t M = required_terms(f, y);
  CHECK(M <= f.terms());
  CHECK(truncation_bound(f, M, y) <= kSeriesTolerance);
  CHECK(minimum_height(f) < y);
}

TEST_CASE("characters") {
  const Gamma0 group(11);
  const auto chi = CharacterSpec::dirichlet_prime(11, 5);
  // The quadratic character mod 11 is even only if (-1/11) = 1; it is not, so
  // j = 5 gives chi(-1) = -1 and must be rejected.
  CHECK_THROWS(chi.validate(group));
  const auto even = CharacterSpec::dirichlet_prime(11, 2);
  CHECK_NOTHROW(even.validate(group));
  const GroupElement g(4, 1, 11, 3), h(2, 1, 11, 6);
  CHECK(std::abs(even(g * h) - even(g) * even(h)) < 1e-14);
  CHECK(std::abs(std::abs(even(g)) - 1.0) < 1e-14);
  CHECK(CharacterSpec::trivial()(g) == cplx(1.0));
  CHECK_THROWS(CharacterSpec::dirichlet(4, {1.0, 1.0, 1.0, 1.0}));
}

TEST_CASE("form config parsing") {
  CHECK(form_from_json(R"({"level": 11, "eta_product": true, "terms": 50})").terms() == 50);
  CHECK(form_from_json(R"({"level": 11, "coefficients": [1, -2, [-1, 0]]})").coefficient(3) == cplx(-1.0));
  CHECK_THROWS_AS(form_from_json(R"({"level": 11})"), ConfigError);
  CHECK_THROWS_AS(form_from_json(R"({"level": 11, "coefficients": []})"), ConfigError);
}
