#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "eisen/eisen.hpp"
#include "eisen/errors.hpp"
#include "number_theory.hpp"

namespace eisen {

SeriesValue automorphic_kernel(const EisensteinSystem& sys, int i, int j, const GreenParameter& p,
                               const UpperHalfPoint& z, const UpperHalfPoint& zp, double u_max) {
  if (!(u_max > 0.0) || !std::isfinite(u_max)) throw InvalidTruncation("u_max must be positive and finite");
  if (i < 0 || j < 0) throw std::invalid_argument("kernel orders must be nonnegative");
  if ((i > 0 || j > 0) && !sys.has_forms()) throw UnsupportedForm("kernel orders above zero need cusp forms");
  const std::int64_t N = sys.group().level();

  // u(z, w) <= U forces Im w >= y eps with eps the smaller root of (1 - eps)^2 = 4 U eps.
  const double eps = 1.0 / (1.0 + 2.0 * u_max + 2.0 * std::sqrt(u_max * u_max + u_max));
  const double R2 = zp.y() / (z.y() * eps);
  const auto c_limit = static_cast<std::int64_t>(std::floor(std::sqrt(R2) / zp.y()));

  cplx sum{}, comp{};
  auto add = [&](cplx v) {
    const cplx t = sum + v;
    comp += (sum - t) + v;
    sum = t;
  };
  double band_symbol = 0.0;
  bool any_band = false;

  for (std::int64_t c = 0; c <= c_limit; c += N) {
    std::int64_t d_lo = 1, d_hi = 1;
    if (c > 0) {
      const double cc = static_cast<double>(c);
      const double span = R2 - cc * cc * zp.y() * zp.y();
      if (span < 0.0) continue;
      const double r = std::sqrt(span);
      d_lo = static_cast<std::int64_t>(std::ceil(-cc * zp.x() - r));
      d_hi = static_cast<std::int64_t>(std::floor(-cc * zp.x() + r));
    }
    for (std::int64_t d = d_lo; d <= d_hi; ++d) {
      if (detail::gcd(c, d) != 1) continue;
      GroupElement g0;
      if (c > 0) {
        const auto [gg, x, y] = detail::ext_gcd(d, c);
        (void)gg;
        g0 = GroupElement(x, -y, c, d);
      }
      const UpperHalfPoint w0 = mobius(g0, zp);
      const double eta = w0.y();
      if (eta < z.y() * eps * (1.0 - 1e-12)) continue;
      const double rho2 = 4.0 * z.y() * eta * u_max - (z.y() - eta) * (z.y() - eta);
      if (rho2 < 0.0) continue;
      const double rho = std::sqrt(rho2);
      const auto k_lo = static_cast<std::int64_t>(std::ceil(z.x() - w0.x() - rho));
      const auto k_hi = static_cast<std::int64_t>(std::floor(z.x() - w0.x() + rho));
      if (k_lo > k_hi) continue;
      // Translating on the left leaves the character and both symbols unchanged.
      const cplx S = s_cocycle(sys, i, j, g0);
      for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        const UpperHalfPoint w(w0.x() + static_cast<double>(k), eta);
        const double u = point_pair_u(z, w);
        if (u > u_max) continue;
        add(S * green_diff(p, u));
        if (u > 0.5 * u_max) {
          band_symbol = std::max(band_symbol, std::abs(S));
          any_band = true;
        }
      }
    }
  }

  const double b = p.b();
  double tail = std::numeric_limits<double>::infinity();
  if (b > 1.0) {
    const double volume = std::numbers::pi / 3.0 * static_cast<double>(sys.group().index());
    const double symbol = any_band ? band_symbol : 1.0;
    tail = 4.0 * std::numbers::pi / volume * symbol * std::abs(green_diff(p, u_max)) * u_max / (b - 1.0);
  }
  return {sum + comp, tail, tail > sys.truncation().tail_target};
}

ResolventResult resolvent_check(double s, double a, const UpperHalfPoint& w, const ResolventGrid& grid) {
  if (!(s > 1.0) || !(a > s + 1.0)) throw DomainError("resolvent check needs 1 < s < a - 1");
  if (!(grid.radius > 0.0) || grid.radial_level < 1 || grid.angular_min < 4 || !(grid.angular_factor > 0.0))
    throw std::invalid_argument("invalid resolvent grid");
  const double lambda = s * (1.0 - s);
  const double theta_w = std::pow(w.y(), s);

  // Geodesic polar coordinates (r, phi) about w:
  // Im z = Im w (1 - rho^2) / |1 - zeta|^2 with rho = tanh(r/2), zeta = rho e^{i phi}.
  auto radial = [&](const ResolventGrid& g, double r) {
    const double u = std::sinh(0.5 * r) * std::sinh(0.5 * r);
    if (u < 1e-300) return 0.0;  // sinh(r) G(u) ~ r log(1/r), far below rounding here
    const double one_minus_rho = 2.0 / (std::exp(r) + 1.0);
    const double rho = 1.0 - one_minus_rho;
    const double sech2 = 1.0 / (std::cosh(0.5 * r) * std::cosh(0.5 * r));
    // The integrand peaks near phi = 0 with width about e^{-r}.
    int count = g.angular_min;
    while (count < g.angular_factor * std::exp(r)) count *= 2;
    const double h = 2.0 * std::numbers::pi / count;
    double total = 0.0;
    for (int k = 0; k < count; ++k) {
      const double half = std::sin(0.5 * h * k);
      total += std::pow(w.y() * sech2 / (one_minus_rho * one_minus_rho + 4.0 * rho * half * half), s);
    }
    return green_g(a, u) * std::sinh(r) * total * h;
  };
  auto integrate = [&](const ResolventGrid& g) {
    auto f = [&](double v, double) -> cplx { return g.radius * radial(g, g.radius * v); };
    return tanh_sinh_fixed(f, g.radial_level).value.real();
  };

  ResolventResult out;
  out.lhs = theta_w / (lambda - a * (1.0 - a));
  out.lhs_variant = -theta_w / (lambda + a * (1.0 - a));
  out.rhs = integrate(grid);
  out.rhs_doubled = integrate(grid.doubled());
  // The radial integrand decays like e^{(s - a) r}.
  out.tail_estimate = std::abs(radial(grid, grid.radius)) / (a - s);
  return out;
}

}  // namespace eisen
