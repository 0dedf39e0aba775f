#include <algorithm>
#include <cmath>

#include "eisen/arithgroup.hpp"
#include "eisen/errors.hpp"
#include "number_theory.hpp"

namespace eisen {

namespace {

constexpr double kBoundarySlack = 1e-14;
constexpr int kMaxReductionSteps = 100000;

}  // namespace

Pullback reduce_modular(const UpperHalfPoint& z) {
  GroupElement g = GroupElement::identity();
  double x = z.x();
  double y = z.y();
  for (int step = 0; step < kMaxReductionSteps; ++step) {
    const double shift = std::floor(x + 0.5);
    if (shift != 0.0) {
      x -= shift;
      g = GroupElement::translation(-static_cast<std::int64_t>(shift)) * g;
    }
    // The two vertical sides are identified; keep the one with positive x.
    if (x < -0.5 + kBoundarySlack) {
      x += 1.0;
      g = GroupElement::translation(1) * g;
    }
    const double r2 = x * x + y * y;
    const bool inside = r2 < 1.0 - kBoundarySlack;
    const bool on_arc_left = !inside && r2 <= 1.0 + kBoundarySlack && x < -kBoundarySlack;
    if (!inside && !on_arc_left) break;
    x = -x / r2;
    y = y / r2;
    g = GroupElement::inversion() * g;
  }
  g = g.sign_normalized();
  if (g == GroupElement::identity()) return {z, g};
  return {mobius(g, z), g};
}

Pullback Gamma0::pullback(const UpperHalfPoint& z) const {
  const Pullback reduced = reduce_modular(z);
  const GroupElement& g = reduced.gamma;
  // delta = r_j g lies in the group iff r_j and g^{-1} = (d, -b; -c, a) share a bottom-row class.
  const std::size_t j = p1_.index(-g.c(), g.a());
  const GroupElement delta = (reps_[j] * g).sign_normalized();
  if (!contains(delta)) throw std::logic_error("coset representative table is inconsistent");
  if (delta == GroupElement::identity()) return {z, delta};
  return {mobius(reps_[j], reduced.point), delta};
}

double Gamma0::domain_height(const UpperHalfPoint& z) const {
  const Pullback reduced = pullback(z);
  if (!(reduced.gamma == GroupElement::identity())) {
    const double dx = reduced.point.x() - z.x();
    const double dy = reduced.point.y() - z.y();
    if (std::hypot(dx, dy) > 1e-12) throw OutOfDomain("point is not in the fundamental domain");
  }
  double best = 0.0;
  for (const Cusp& cusp : cusps_) best = std::max(best, mobius(cusp.scaling.inverse(), z).y());
  return best;
}

double Gamma0::invariant_height(const UpperHalfPoint& z, double c_max) const {
  if (!(c_max > 0.0)) throw InvalidTruncation("cMax must be positive");
  const double x = z.x();
  const double y = z.y();
  double best = 0.0;
  for (std::size_t a = 0; a < cusps_.size(); ++a) {
    const auto w = static_cast<double>(cusps_[a].width);
    if (coset_admissible(a, 0, 1)) best = std::max(best, y / w);
  }
  for (std::size_t a = 0; a < cusps_.size(); ++a) {
    const auto w = static_cast<double>(cusps_[a].width);
    const auto c_limit = static_cast<std::int64_t>(std::floor(c_max / std::sqrt(w)));
    auto height = [&](std::int64_t c, std::int64_t d) {
      const double re = static_cast<double>(c) * x + static_cast<double>(d);
      const double im = static_cast<double>(c) * y;
      return y / (w * (re * re + im * im));
    };
    std::int64_t c = 1;
    for (; c <= c_limit; ++c) {
      const double cd = static_cast<double>(c);
      if (1.0 / (w * cd * cd * y) <= best) break;
      const auto centre = static_cast<std::int64_t>(std::llround(-cd * x));
      for (int side : {+1, -1}) {
        for (std::int64_t step = (side > 0 ? 0 : 1); step <= c; ++step) {
          const std::int64_t d = centre + side * step;
          const double offset = cd * x + static_cast<double>(d);
          if (offset * offset > 0.0 && y / (w * offset * offset) <= best) break;
          if (!coset_admissible(a, c, detail::floor_mod(d, c))) continue;
          best = std::max(best, height(c, d));
          break;
        }
      }
    }
    if (c > c_limit) {
      const double next = static_cast<double>(c_limit + 1);
      if (1.0 / (w * next * next * y) > best)
        throw InsufficientCMax("invariant height search is not yet exhaustive; raise cMax");
    }
  }
  return best;
}

GroupConstants Gamma0::group_constants(double c_max) const {
  if (!(c_max > 0.0)) throw InvalidTruncation("cMax must be positive");
  GroupConstants out;
  const std::int64_t n = level_;
  for (std::size_t a = 0; a < cusps_.size(); ++a) {
    for (std::size_t b = 0; b < cusps_.size(); ++b) {
      const GroupElement ga = cusps_[a].base;
      const GroupElement gb_inv = cusps_[b].base.inverse();
      const double scale = std::sqrt(static_cast<double>(cusps_[a].width * cusps_[b].width));
      const auto c_limit = static_cast<std::int64_t>(std::floor(c_max / scale));
      std::int64_t found = 0;
      // Increasing search over C: the first hit is the minimum.
      for (std::int64_t c = 1; c <= c_limit && found == 0; ++c) {
        for (std::int64_t d = 0; d < n * c && found == 0; ++d) {
          if (std::gcd(c, d) != 1) continue;
          auto [g, x, yv] = detail::ext_gcd(d, c);
          (void)g;
          for (std::int64_t k = 0; k < n; ++k) {
            const GroupElement m(x + k * c, -yv + k * d, c, d);
            if (contains(ga * m * gb_inv)) {
              found = c;
              break;
            }
          }
        }
      }
      if (found == 0) throw InsufficientCMax("no element with nonzero lower-left entry within cMax");
      out.minimal_entry[{a, b}] = found;
      const double value = scale * static_cast<double>(found);
      out.c_ab[{a, b}] = value;
      out.c_gamma = std::max(out.c_gamma, 1.0 / (value * value));
    }
  }
  return out;
}

}  // namespace eisen
