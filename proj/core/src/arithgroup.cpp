#include "eisen/arithgroup.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <tuple>

#include "eisen/errors.hpp"
#include "number_theory.hpp"

namespace eisen {

using detail::floor_mod;

GroupElement::GroupElement(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (a * d - b * c != 1) throw InvalidMatrix("group element must have determinant 1");
}

GroupElement GroupElement::sign_normalized() const {
  if (c_ < 0 || (c_ == 0 && d_ < 0)) return negated();
  return *this;
}

bool GroupElement::is_plus_minus_identity() const {
  return b_ == 0 && c_ == 0 && a_ == d_;
}

GroupElement operator*(const GroupElement& x, const GroupElement& y) {
  return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
          x.c_ * y.b_ + x.d_ * y.d_};
}

UpperHalfPoint::UpperHalfPoint(double x, double y) : x_(x), y_(y) {
  if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
    throw DomainError("point must lie in the upper half-plane");
}

UpperHalfPoint mobius(const RealMatrix& g, const UpperHalfPoint& z) {
  if (std::abs(g.det() - 1.0) > kMatrixTolerance)
    throw InvalidMatrix("real matrix is not unimodular within tolerance");
  // Im(gz) = y / |cz + d|^2 without forming a complex quotient.
  const double cx_d = g.c * z.x() + g.d;
  const double cy = g.c * z.y();
  const double denom = cx_d * cx_d + cy * cy;
  const double ax_b = g.a * z.x() + g.b;
  const double ay = g.a * z.y();
  const double re = (ax_b * cx_d + ay * cy) / denom;
  const double im = z.y() / denom;
  return {re, im};
}

UpperHalfPoint mobius(const GroupElement& g, const UpperHalfPoint& z) {
  return mobius(RealMatrix::from(g), z);
}

double point_pair_u(const UpperHalfPoint& z, const UpperHalfPoint& w) {
  const double dx = z.x() - w.x();
  const double dy = z.y() - w.y();
  return (dx * dx + dy * dy) / (4.0 * z.y() * w.y());
}

ProjectiveLine::ProjectiveLine(std::int64_t level) : level_(level) {
  if (level < 1) throw std::invalid_argument("level must be positive");
  const std::int64_t n = level;
  class_of_.assign(static_cast<std::size_t>(n * n), -1);
  std::vector<std::int64_t> units;
  for (std::int64_t u = 0; u < n; ++u)
    if (std::gcd(u, n) == 1) units.push_back(u);
  if (n == 1) units = {0};
  for (std::int64_t c = 0; c < n; ++c) {
    for (std::int64_t d = 0; d < n; ++d) {
      if (std::gcd(std::gcd(c, d), n) != 1) continue;
      auto& slot = class_of_[static_cast<std::size_t>(c * n + d)];
      if (slot >= 0) continue;
      const auto id = static_cast<std::int32_t>(reps_.size());
      reps_.emplace_back(c, d);
      for (auto u : units)
        class_of_[static_cast<std::size_t>(((u * c) % n) * n + (u * d) % n)] = id;
    }
  }
}

std::size_t ProjectiveLine::index(std::int64_t c, std::int64_t d) const {
  const auto id = class_of_[static_cast<std::size_t>(floor_mod(c, level_) * level_ + floor_mod(d, level_))];
  if (id < 0) throw std::invalid_argument("pair is not a point of the projective line");
  return static_cast<std::size_t>(id);
}

namespace {

GroupElement lift_to_sl2(std::int64_t c, std::int64_t d) {
  auto [g, x, y] = detail::ext_gcd(d, c);
  if (g != 1) throw std::invalid_argument("bottom row is not primitive");
  // a*d - b*c = 1 with a = x, b = -y.
  return {x, -y, c, d};
}

std::string cusp_label(std::int64_t p, std::int64_t q) {
  if (q == 0) return "inf";
  if (p == 0) return "0";
  return std::to_string(p) + "/" + std::to_string(q);
}

}  // namespace

Gamma0::Gamma0(std::int64_t level) : level_(level), p1_(level) {
  build_cusps();
  build_coset_representatives();
}

Gamma0::Gamma0(std::int64_t level, const std::vector<std::string>& cusp_order) : Gamma0(level) {
  if (cusp_order.empty()) return;
  if (cusp_order.size() != cusps_.size())
    throw ConfigError("cusp_order must list every cusp exactly once");
  std::vector<Cusp> ordered;
  std::set<std::string> seen;
  for (const auto& label : cusp_order) {
    if (!seen.insert(label).second) throw ConfigError("duplicate cusp label " + label);
    ordered.push_back(cusps_.at(cusp_index(label)));
  }
  cusps_ = std::move(ordered);
}

bool Gamma0::contains(const GroupElement& g) const { return g.c() % level_ == 0; }

bool Gamma0::cusps_equivalent(std::int64_t p1, std::int64_t q1, std::int64_t p2,
                              std::int64_t q2) const {
  // p/q ~ p'/q' iff s q' = s' q mod gcd(q q', N), where p s = 1 mod q.
  auto solve = [](std::int64_t p, std::int64_t q) -> std::int64_t {
    if (q == 0) return 1;
    return detail::inverse_mod(p, std::abs(q));
  };
  const std::int64_t s1 = solve(p1, q1);
  const std::int64_t s2 = solve(p2, q2);
  const std::int64_t m = std::gcd(q1 * q2, level_);
  if (m == 0) return true;
  return floor_mod(s1 * q2 - s2 * q1, m) == 0;
}

void Gamma0::build_cusps() {
  std::vector<std::pair<std::int64_t, std::int64_t>> reps{{1, 0}};
  for (std::int64_t q = 1; q < level_; ++q) {
    if (level_ % q != 0) continue;
    for (std::int64_t p = 0; p < std::max<std::int64_t>(q, level_); ++p) {
      if (std::gcd(p, q) != 1) continue;
      const bool known = std::any_of(reps.begin(), reps.end(), [&](const auto& r) {
        return cusps_equivalent(p, q, r.first, r.second);
      });
      if (!known) reps.emplace_back(p, q);
    }
  }
  for (auto [p, q] : reps) {
    Cusp cusp;
    cusp.label = cusp_label(p, q);
    cusp.numerator = p;
    cusp.denominator = q;
    if (q == 0) {
      cusp.base = GroupElement::identity();
    } else {
      auto [g, x, y] = detail::ext_gcd(p, q);
      (void)g;
      // p*x + q*y = 1  ->  (p, -y; q, x) has determinant 1.
      cusp.base = GroupElement(p, -y, q, x);
    }
    // Smallest k with base T^k base^{-1} in the group.
    std::int64_t width = 1;
    while (!contains(cusp.base * GroupElement::translation(width) * cusp.base.inverse())) ++width;
    cusp.width = width;
    const double root = std::sqrt(static_cast<double>(width));
    const RealMatrix b = RealMatrix::from(cusp.base);
    cusp.scaling = {b.a * root, b.b / root, b.c * root, b.d / root};
    cusps_.push_back(cusp);
  }
}

void Gamma0::build_coset_representatives() {
  // For each point of P^1(Z/N) pick the lift with the smallest c^2 + d^2, the
  // identity winning ties so the domain contains the standard one, then the top
  // row putting the image of infinity in (-1/2, 1/2].
  const std::size_t count = p1_.size();
  using Key = std::tuple<std::int64_t, bool, std::int64_t, std::int64_t, std::int64_t>;
  auto key = [](std::int64_t c, std::int64_t d) { return Key{c * c + d * d, c != 0, std::abs(d), -d, c}; };
  std::vector<std::optional<std::pair<std::int64_t, std::int64_t>>> best(count);
  std::size_t filled = 0;
  auto sweep = [&](std::int64_t radius) {
    for (std::int64_t c = 0; c <= radius; ++c) {
      for (std::int64_t d = -radius; d <= radius; ++d) {
        if ((c == 0 && d != 1) || std::gcd(c, d) != 1) continue;
        const std::size_t idx = p1_.index(c, d);
        if (!best[idx]) {
          best[idx] = {c, d};
          ++filled;
        } else if (key(c, d) < key(best[idx]->first, best[idx]->second)) {
          best[idx] = {c, d};
        }
      }
    }
  };
  std::int64_t radius = 1;
  while (filled < count) sweep(radius++);
  // A square sweep can miss a shorter vector just outside it; twice the radius cannot.
  sweep(2 * radius);
  reps_.clear();
  for (std::size_t i = 0; i < count; ++i) {
    auto [c, d] = *best[i];
    if (c == 0) {
      reps_.push_back(GroupElement::identity());
      continue;
    }
    GroupElement lift = lift_to_sl2(c, d);
    // Shift by T^k: a -> a + k c, keeping a/c in (-1/2, 1/2].
    const std::int64_t a = lift.a();
    std::int64_t k = -detail::floor_div(2 * a + c - 1, 2 * c);
    lift = GroupElement::translation(k) * lift;
    reps_.push_back(lift);
  }
}

std::size_t Gamma0::cusp_index(std::string_view label) const {
  for (std::size_t i = 0; i < cusps_.size(); ++i)
    if (cusps_[i].label == label) return i;
  const std::string alias = (label == "oo" || label == "infinity" || label == "∞") ? "inf" : "";
  if (!alias.empty()) return cusp_index(alias);
  throw ConfigError("unknown cusp label " + std::string(label));
}

bool Gamma0::coset_admissible(std::size_t cusp, std::int64_t c, std::int64_t d) const {
  const GroupElement& g = cusps_.at(cusp).base;
  if (c == 0) return floor_mod(g.c(), level_) == 0;
  if (std::gcd(c, d) != 1) return false;
  if (level_ == 1) return true;
  // Lower-left of g (alpha0 + k c, beta0 + k d; c, d) is q alpha0 + t c + k q c.
  const std::int64_t alpha0 = detail::inverse_mod(d, c);
  const std::int64_t modulus = std::gcd(floor_mod(g.c() * c, level_), level_);
  const std::int64_t value = floor_mod(g.c() * alpha0 + g.d() * c, level_);
  return modulus == 0 ? value == 0 : value % modulus == 0;
}

GroupElement Gamma0::coset_element(std::size_t cusp, std::int64_t c, std::int64_t d) const {
  const GroupElement& g = cusps_.at(cusp).base;
  if (c == 0) {
    if (floor_mod(g.c(), level_) != 0 || d != 1) throw std::invalid_argument("inadmissible coset");
    return g;
  }
  const std::int64_t alpha0 = detail::inverse_mod(d, c);
  const std::int64_t beta0 = (alpha0 * d - 1) / c;
  for (std::int64_t k = 0; k < level_; ++k) {
    const GroupElement m(alpha0 + k * c, beta0 + k * d, c, d);
    const GroupElement gamma = g * m;
    if (contains(gamma)) return gamma;
  }
  throw std::invalid_argument("inadmissible coset");
}

void Gamma0::for_each_coset(std::size_t cusp, double c_max,
                            const std::function<void(const CosetEntry&)>& visit,
                            bool with_elements) const {
  if (!(c_max > 0.0) || !std::isfinite(c_max)) throw InvalidTruncation("cMax must be positive and finite");
  const Cusp& k = cusps_.at(cusp);
  const double root = std::sqrt(static_cast<double>(k.width));
  const auto c_limit = static_cast<std::int64_t>(std::floor(c_max / root * (1.0 + 1e-14)));
  CosetEntry entry;
  if (coset_admissible(cusp, 0, 1)) {
    entry.c = 0;
    entry.d = 1;
    entry.gamma = with_elements ? coset_element(cusp, 0, 1) : GroupElement::identity();
    visit(entry);
  }
  const bool at_infinity = floor_mod(k.base.c(), level_) == 0;
  for (std::int64_t c = 1; c <= c_limit; ++c) {
    if (at_infinity && c % level_ != 0) continue;
    for (std::int64_t d = 0; d < c; ++d) {
      if (c > 1 && d == 0) continue;
      if (!coset_admissible(cusp, c, d)) continue;
      entry.c = c;
      entry.d = d;
      entry.gamma = with_elements ? coset_element(cusp, c, d) : GroupElement::identity();
      visit(entry);
    }
  }
}

std::vector<GroupElement> Gamma0::coset_enumerate(std::size_t cusp, double c_max) const {
  std::vector<GroupElement> out;
  for_each_coset(cusp, c_max, [&](const CosetEntry& e) { out.push_back(e.gamma); });
  return out;
}

std::size_t Gamma0::coset_count(std::size_t cusp, double c_max) const {
  std::size_t count = 0;
  for_each_coset(cusp, c_max, [&](const CosetEntry&) { ++count; }, false);
  return count;
}

std::size_t Gamma0::infinity_index() const {
  for (std::size_t i = 0; i < cusps_.size(); ++i)
    if (cusps_[i].denominator == 0) return i;
  throw std::logic_error("no cusp at infinity");
}

namespace {

// Some k in [0, N) with base_a T^k M base_b^{-1} in the group, M = (alpha, beta; c, d).
std::optional<GroupElement> pair_lift(const Gamma0& group, const GroupElement& base_a,
                                      const GroupElement& base_b_inv, std::int64_t c, std::int64_t d) {
  const std::int64_t alpha0 = detail::inverse_mod(floor_mod(d, c), c);
  const std::int64_t beta0 = (alpha0 * d - 1) / c;
  for (std::int64_t k = 0; k < group.level(); ++k) {
    const GroupElement m(alpha0 + k * c, beta0 + k * d, c, d);
    const GroupElement gamma = base_a * m * base_b_inv;
    if (group.contains(gamma)) return gamma;
  }
  return std::nullopt;
}

}  // namespace

GroupElement Gamma0::double_coset_element(std::size_t a, std::size_t b, std::int64_t c, std::int64_t d) const {
  const GroupElement& base_a = cusps_.at(a).base;
  const GroupElement base_b_inv = cusps_.at(b).base.inverse();
  if (c == 0) {
    if (a != b || d != 1) throw std::invalid_argument("inadmissible coset");
    return base_a * base_b_inv;
  }
  if (c < 0 || std::gcd(c, d) != 1) throw std::invalid_argument("inadmissible coset");
  if (auto gamma = pair_lift(*this, base_a, base_b_inv, c, d)) return *gamma;
  throw std::invalid_argument("inadmissible coset");
}

void Gamma0::for_each_double_coset(std::size_t a, std::size_t b, double c_max,
                                   const std::function<void(const CosetEntry&)>& visit,
                                   bool with_elements) const {
  if (!(c_max > 0.0) || !std::isfinite(c_max)) throw InvalidTruncation("cMax must be positive and finite");
  const Cusp& ka = cusps_.at(a);
  const Cusp& kb = cusps_.at(b);
  const GroupElement base_b_inv = kb.base.inverse();
  const double root = std::sqrt(static_cast<double>(ka.width * kb.width));
  const auto c_limit = static_cast<std::int64_t>(std::floor(c_max / root * (1.0 + 1e-14)));
  const std::int64_t N = level_;
  // Admissibility depends on (c, d) mod N only; filled lazily, -1 unknown.
  std::vector<std::int8_t> admissible(static_cast<std::size_t>(N * N), -1);
  std::vector<std::int8_t> row_any(static_cast<std::size_t>(N), -1);
  auto residue_ok = [&](std::int64_t c, std::int64_t d) {
    const std::int64_t cr = c % N, dr = floor_mod(d, N);
    auto& slot = admissible[static_cast<std::size_t>(cr * N + dr)];
    if (slot < 0) slot = pair_lift(*this, ka.base, base_b_inv, c, d) ? 1 : 0;
    return slot == 1;
  };
  auto row_possible = [&](std::int64_t c) {
    // A row with no admissible residue is skipped without visiting its d range.
    const std::int64_t cr = c % N;
    auto& any = row_any[static_cast<std::size_t>(cr)];
    if (any < 0) {
      any = 0;
      for (std::int64_t dr = 0; dr < N && !any; ++dr) {
        // Lift (cr, dr) to a coprime pair with the same residues.
        for (std::int64_t j = 0; j < 64 * N + 64; ++j) {
          const std::int64_t d = dr + j * N;
          if (std::gcd(c, d) != 1) continue;
          if (residue_ok(c, d)) any = 1;
          break;
        }
      }
    }
    return any == 1;
  };
  CosetEntry entry;
  if (a == b) {
    entry.c = 0;
    entry.d = 1;
    entry.gamma = with_elements ? ka.base * base_b_inv : GroupElement::identity();
    visit(entry);
  }
  for (std::int64_t c = 1; c <= c_limit; ++c) {
    if (N > 1 && !row_possible(c)) continue;
    const std::int64_t d_end = c * kb.width;
    for (std::int64_t d = 0; d < d_end; ++d) {
      if (std::gcd(c, d) != 1) continue;
      if (N > 1 && !residue_ok(c, d)) continue;
      entry.c = c;
      entry.d = d;
      entry.gamma = with_elements ? double_coset_element(a, b, c, d) : GroupElement::identity();
      visit(entry);
    }
  }
}

std::vector<Cusp> cusps_of_gamma0(std::int64_t level) { return Gamma0(level).cusps(); }

}  // namespace eisen
