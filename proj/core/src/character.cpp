#include <cmath>
#include <numbers>

#include "eisen/errors.hpp"
#include "eisen/modform.hpp"
#include "number_theory.hpp"

namespace eisen {

CharacterSpec CharacterSpec::trivial() { return {}; }

CharacterSpec CharacterSpec::dirichlet(std::int64_t modulus, std::vector<cplx> values) {
  if (modulus < 1 || values.size() != static_cast<std::size_t>(modulus))
    throw ConfigError("character table must have one value per residue");
  for (std::int64_t r = 0; r < modulus; ++r) {
    const cplx v = values[static_cast<std::size_t>(r)];
    const bool unit = std::gcd(r, modulus) == 1;
    if (unit && std::abs(std::abs(v) - 1.0) > 1e-12) throw ConfigError("character must be unimodular on units");
    if (!unit && std::abs(v) > 1e-12) throw ConfigError("character must vanish off the units");
  }
  for (std::int64_t a = 0; a < modulus; ++a)
    for (std::int64_t b = 0; b < modulus; ++b) {
      const cplx lhs = values[static_cast<std::size_t>((a * b) % modulus)];
      const cplx rhs = values[static_cast<std::size_t>(a)] * values[static_cast<std::size_t>(b)];
      if (std::abs(lhs - rhs) > 1e-12) throw ConfigError("character table is not multiplicative");
    }
  CharacterSpec out;
  out.modulus_ = modulus;
  out.values_ = std::move(values);
  out.description_ = "dirichlet mod " + std::to_string(modulus);
  return out;
}

CharacterSpec CharacterSpec::dirichlet_prime(std::int64_t p, std::int64_t j) {
  if (p < 2) throw ConfigError("modulus must be prime");
  for (std::int64_t k = 2; k * k <= p; ++k)
    if (p % k == 0) throw ConfigError("modulus must be prime");
  std::int64_t root = 0;
  for (std::int64_t g = 2; g < p && root == 0; ++g) {
    std::int64_t x = 1;
    std::int64_t order = 0;
    do {
      x = (x * g) % p;
      ++order;
    } while (x != 1);
    if (order == p - 1) root = g;
  }
  if (p == 2) root = 1;
  std::vector<cplx> values(static_cast<std::size_t>(p), 0.0);
  std::int64_t x = 1;
  for (std::int64_t k = 0; k < p - 1; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % (p - 1)) / static_cast<double>(p - 1);
    values[static_cast<std::size_t>(x)] = std::polar(1.0, angle);
    x = (x * root) % p;
  }
  auto out = dirichlet(p, std::move(values));
  out.description_ = "dirichlet mod " + std::to_string(p) + " index " + std::to_string(j);
  return out;
}

cplx CharacterSpec::operator()(const GroupElement& gamma) const {
  if (values_.empty()) return 1.0;
  return values_[static_cast<std::size_t>(detail::floor_mod(gamma.d(), modulus_))];
}

void CharacterSpec::validate(const Gamma0& group) const {
  if (is_trivial()) return;
  if (group.level() % modulus_ != 0) throw ConfigError("character modulus must divide the level");
  if (std::abs((*this)(GroupElement(-1, 0, 0, -1)) - 1.0) > 1e-12)
    throw ConfigError("character must be even (trivial on -I)");
  for (const Cusp& cusp : group.cusps()) {
    const GroupElement generator = cusp.base * GroupElement::translation(cusp.width) * cusp.base.inverse();
    if (std::abs((*this)(generator) - 1.0) > 1e-12)
      throw ConfigError("character must be trivial on the stabilizer of cusp " + cusp.label);
  }
}

std::string CharacterSpec::describe() const { return description_; }

}  // namespace eisen
