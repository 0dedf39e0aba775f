#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "eisen/eisen.hpp"
#include "eisen_verify/sampler.hpp"
#include "eisen_verify/suites.hpp"
#include "systems.hpp"

namespace eisen::verify {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTransformCMax = 500.0 * 11.0;
const cplx kTransformS{2.3, 0.7};

std::vector<SeriesFamily> families_at(const EisensteinSystem& sys, int m, int n, const UpperHalfPoint& z, cplx s) {
  std::vector<SeriesFamily> out;
  for (std::size_t a = 0; a < sys.group().cusps().size(); ++a) out.push_back(eval_e_family(sys, a, m, n, z, s));
  return out;
}

// A point whose image under gamma sits at a comparable height: |c z + d| is
// drawn near one, so neither z nor gamma z is deep in a cusp.
UpperHalfPoint balanced_point(Sampler& rng, const GroupElement& gamma) {
  if (gamma.c() == 0) return {rng.uniform(-0.5, 0.5), rng.uniform(0.5, 1.5)};
  const double rho = rng.uniform(0.7, 1.4);
  const double theta = rng.uniform(kPi / 6.0, 5.0 * kPi / 6.0) * (gamma.c() > 0 ? 1.0 : -1.0);
  const double c = static_cast<double>(gamma.c());
  const double d = static_cast<double>(gamma.d());
  return {(rho * std::cos(theta) - d) / c, rho * std::sin(theta) / c};
}

double sup_norm(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

SuiteResult run_transformation(const Options& options) {
  SuiteResult out{"transformation", {}};
  const auto sys = level11_system(kTransformCMax, target_or(options.tail_target, 1e-8));
  Sampler rng(stream_seed(options.seed, 1));
  const std::array<std::array<int, 2>, 4> orders{{{1, 0}, {0, 1}, {1, 1}, {2, 0}}};

  double worst_abs = 0.0, worst_ratio = 0.0, worst_hom = 0.0;
  for (int sample = 0; sample < 20; ++sample) {
    const GroupElement gamma = rng.group_element(11, 50);
    const UpperHalfPoint z = balanced_point(rng, gamma);
    const UpperHalfPoint gz = mobius(gamma, z);
    // One (2, 1) family per cusp and point covers every order in the list.
    const auto fam_z = families_at(*sys, 2, 1, z, kTransformS);
    const auto fam_gz = families_at(*sys, 2, 1, gz, kTransformS);
    for (auto [m, n] : orders) {
      const EisVector ez = assemble_vector(fam_z, m, n);
      const EisVector egz = assemble_vector(fam_gz, m, n);
      const BlockMatrix pi = pi_matrix(*sys, m, n, gamma);
      Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(ez.values.data(), static_cast<Eigen::Index>(ez.values.size()));
      Eigen::VectorXcd w = Eigen::Map<const Eigen::VectorXcd>(egz.values.data(), static_cast<Eigen::Index>(egz.values.size()));
      const double residual = (w - pi.entries * v).cwiseAbs().maxCoeff();
      double tails = 0.0;
      for (double t : ez.tails) tails += t;
      for (double t : egz.tails) tails += t;
      worst_abs = std::max(worst_abs, residual);
      worst_ratio = std::max(worst_ratio, residual / tails);
    }
    // The representation is a homomorphism: pi(gamma tau) = pi(gamma) pi(tau).
    const GroupElement tau = rng.group_element(11, 50);
    const BlockMatrix lhs = pi_matrix(*sys, 2, 1, gamma * tau);
    const BlockMatrix p1 = pi_matrix(*sys, 2, 1, gamma);
    const BlockMatrix p2 = pi_matrix(*sys, 2, 1, tau);
    worst_hom = std::max(worst_hom, (lhs.entries - p1.entries * p2.entries).cwiseAbs().maxCoeff());
  }
  out.checks.push_back(make_check("residual_over_summed_tails", worst_ratio, Relation::AtMost, 10.0,
                                  "max over 20 (gamma, z) and orders (1,0),(0,1),(1,1),(2,0), s = 2.3+0.7i"));
  out.checks.push_back(make_check("residual_abs", worst_abs, Relation::AtMost, 1e-6, "cMax = 5500"));
  out.checks.push_back(make_check("pi_homomorphism", worst_hom, Relation::AtMost, 1e-9));

  // Q/E conversion on a lighter truncation: both sides share the coset table.
  const auto light = level11_system(1100.0, target_or(options.tail_target, 1e-8));
  Sampler qrng(stream_seed(options.seed, 2));
  double worst_direct = 0.0, worst_round = 0.0;
  for (int sample = 0; sample < 10; ++sample) {
    const UpperHalfPoint z(qrng.uniform(-0.5, 0.5), qrng.uniform(0.3, 1.5));
    const cplx Fz = light->antiderivative_f(0)(z);
    const cplx Gz = light->antiderivative_g(0)(z);
    const SeriesFamily e = eval_e_family(*light, 0, 1, 1, z, kTransformS);
    const SeriesFamily q = eval_q_family(*light, 0, 1, 1, z, kTransformS);
    const SeriesFamily q_conv = convert_q_from_e(e, Fz, Gz);
    worst_direct = std::max(worst_direct, std::abs(q.at(1, 1) - q_conv.at(1, 1)));
    const SeriesFamily back = convert_e_from_q(q_conv, Fz, Gz);
    const double scale = std::max(1.0, sup_norm(e.values));
    for (std::size_t k = 0; k < e.values.size(); ++k)
      worst_round = std::max(worst_round, std::abs(back.values[k] - e.values[k]) / scale);
  }
  out.checks.push_back(make_check("q_direct_vs_converted", worst_direct, Relation::AtMost, 1e-9, "(1,1), 10 points"));
  out.checks.push_back(make_check("qe_round_trip", worst_round, Relation::AtMost, 1e-12, "relative to max(1, |E|)"));
  return out;
}

SuiteResult run_laplacian(const Options& options) {
  SuiteResult out{"laplacian", {}};
  const auto sys = level11_system(1100.0, target_or(options.tail_target, 1e-8));
  Sampler rng(stream_seed(options.seed, 3));
  const cplx s{2.5, 0.0};
  const double h = 1e-3;
  const std::size_t inf = sys->group().infinity_index();
  auto E = [&](double x, double y) { return eval_e(*sys, {1, 1, inf}, UpperHalfPoint(x, y), s).value; };
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double x = rng.uniform(-0.5, 0.5);
    const double y = rng.uniform(0.5, 1.5);
    const cplx centre = E(x, y);
    const cplx second = (E(x + h, y) + E(x - h, y) + E(x, y + h) + E(x, y - h) - 4.0 * centre) / (h * h);
    const cplx laplacian = -y * y * second;
    const cplx expected = s * (1.0 - s) * centre;
    worst = std::max(worst, std::abs(laplacian - expected) / std::abs(expected));
  }
  out.checks.push_back(make_check("eigenvalue_relative", worst, Relation::AtMost, 1e-4,
                                  "E_inf^{1,1}(z, 2.5), five-point stencil, h = 1e-3, 10 points"));
  return out;
}

constexpr double kMinSymbol = 0.05;
constexpr double kMinImageHeight = 2e-4;

SuiteResult run_order(const Options& options) {
  SuiteResult out{"order", {}};
  const auto sys = level11_system(kTransformCMax, target_or(options.tail_target, 1e-8));
  Sampler rng(stream_seed(options.seed, 4));
  const std::size_t inf = sys->group().infinity_index();

  // Short hyperbolic elements keep the 2^L images g_S z away from the real line.
  // Null-homologous ones have vanishing symbols and lower the order of the
  // operator, so they cannot witness that the length is sharp.
  auto draw = [&] {
    for (;;) {
      const GroupElement g = rng.group_element(11, 12);
      const std::int64_t trace = g.a() + g.d();
      if (g.c() == 0 || trace == 2 || trace == -2) continue;
      if (std::abs(sys->symbol_f(g)) >= kMinSymbol && std::abs(sys->symbol_g(g)) >= kMinSymbol) return g;
    }
  };
  // The grid point maximizing the lowest image height.
  auto best_point = [](std::span<const GroupElement> list) {
    UpperHalfPoint best(0.0, 1.0);
    double best_height = 0.0;
    const std::size_t L = list.size();
    for (int i = 0; i < 40; ++i)
      for (int j = 1; j <= 120; ++j) {
        const UpperHalfPoint w(-0.5 + i / 40.0, 0.005 * j);
        double lowest = w.y();
        for (std::size_t mask = 1; mask < (std::size_t{1} << L); ++mask) {
          GroupElement g;
          for (std::size_t k = 0; k < L; ++k)
            if (mask & (std::size_t{1} << k)) g = g * list[k];
          lowest = std::min(lowest, mobius(g, w).y());
        }
        if (lowest > best_height) {
          best_height = lowest;
          best = w;
        }
      }
    return std::pair{best, best_height};
  };

  const cplx s = kTransformS;
  for (auto [m, n] : std::array<std::array<int, 2>, 2>{{{1, 0}, {1, 1}}}) {
    double worst_full = 0.0, weakest_ratio = INFINITY;
    for (int trial = 0; trial < 3; ++trial) {
      // Lists whose images all stay above kMinImageHeight at some grid point;
      // lower images push the cMax tail past the annihilation budget.
      std::vector<GroupElement> list;
      UpperHalfPoint z(0.0, 1.0);
      for (;;) {
        list.clear();
        for (int k = 0; k < m + n + 1; ++k) list.push_back(draw());
        const auto [point, height] = best_point(list);
        z = point;
        if (height >= kMinImageHeight) break;
      }
      const SeriesRequest req{m, n, inf};
      const auto full = order_operator(*sys, req, list, z, s);
      const auto shorter = order_operator(*sys, req, std::span(list).first(list.size() - 1), z, s);
      const double noise = std::max({std::abs(full.value), full.tail_estimate, shorter.tail_estimate});
      worst_full = std::max(worst_full, std::abs(full.value));
      weakest_ratio = std::min(weakest_ratio, std::abs(shorter.value) / noise);
    }
    const std::string tag = std::to_string(m) + "_" + std::to_string(n);
    out.checks.push_back(make_check("annihilates_" + tag, worst_full, Relation::AtMost, 1e-6,
                                    "length m+n+1, worst of 3 element lists with images above height 2e-4"));
    out.checks.push_back(make_check("shorter_survives_" + tag, weakest_ratio, Relation::AtLeast, 100.0,
                                    "length m+n residual over the noise floor"));
  }
  return out;
}

}  // namespace eisen::verify
