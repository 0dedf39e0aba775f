#include <algorithm>
#include <cmath>
#include <vector>

#include "eisen/eisen.hpp"
#include "eisen/fourier.hpp"
#include "eisen/oracle.hpp"
#include "eisen_verify/suites.hpp"
#include "systems.hpp"

namespace eisen::verify {

SuiteResult run_scattering(const Options& options) {
  SuiteResult out{"scattering", {}};
  const double target = target_or(options.tail_target, 1e-8);

  // The closed-form expansion against the lattice sum before it is trusted.
  double worst_lattice = 0.0;
  for (double s : {2.0, 2.5, 3.0}) {
    const UpperHalfPoint i(0.0, 1.0);
    const double lattice = oracle::sl2_lattice_sum(i, s, 2000.0);
    worst_lattice = std::max(worst_lattice, std::abs(oracle::sl2_expansion(i, s, 12) - lattice));
  }
  out.checks.push_back(make_check("sl2_oracle_vs_lattice", worst_lattice, Relation::AtMost, 1e-8,
                                  "z = i, s = 2, 2.5, 3, disc radius 2000"));

  // Extraction from the truncated series on SL2(Z).
  const auto sl2 = level1_system(1000.0, target);
  const cplx s25{2.5, 0.0};
  const FourierLine line = extract_line(*sl2, 0, 0, 0, 0, s25, 10);
  double worst_coeff = 0.0;
  for (std::int64_t k = 1; k <= 10; ++k) {
    const cplx expected = oracle::sl2_coefficient(k, s25);
    worst_coeff = std::max(worst_coeff, std::abs(line.coefficients.at(k).value - expected) / std::abs(expected));
  }
  out.checks.push_back(make_check("sl2_coefficients_relative", worst_coeff, Relation::AtMost, 1e-8, "k = 1..10"));
  const double constant_err = std::max(std::abs(line.constant.c_1ms - oracle::sl2_scattering(s25)),
                                       std::abs(line.constant.c_s - 1.0));
  out.checks.push_back(make_check("sl2_constant_term", constant_err, Relation::AtMost, 1e-8));

  // Functional equation through the validated closed forms.
  double worst_sl2_fe = 0.0, worst_g11_fe = 0.0;
  for (double s : {1.8, 2.5, 3.1}) {
    worst_sl2_fe = std::max(worst_sl2_fe, std::abs(oracle::sl2_scattering(1.0 - s) * oracle::sl2_scattering(s) - 1.0));
    const Eigen::Matrix2cd prod =
        oracle::gamma0_prime_scattering(11, 1.0 - s) * oracle::gamma0_prime_scattering(11, s);
    worst_g11_fe = std::max(worst_g11_fe, (prod - Eigen::Matrix2cd::Identity()).cwiseAbs().rowwise().sum().maxCoeff());
  }
  out.checks.push_back(make_check("sl2_functional_equation", worst_sl2_fe, Relation::AtMost, 1e-9));
  out.checks.push_back(make_check("gamma0_11_functional_equation", worst_g11_fe, Relation::AtMost, 1e-6));

  // The two-cusp closed form against extraction inside the convergence region.
  const auto g11 = level11_system(1100.0, target);
  const auto phi = extract_scattering(*g11, 0, 0, s25);
  const double worst_matrix = (phi.at({0, 0}) - oracle::gamma0_prime_scattering(11, s25)).cwiseAbs().maxCoeff();
  out.checks.push_back(make_check("gamma0_11_scattering_vs_closed_form", worst_matrix, Relation::AtMost, 1e-8,
                                  "s = 2.5, all cusp pairs"));

  // Coefficient growth bound, k in [1, 32]: one (1,0) family line per cusp
  // pair serves both (0,0) and (1,0).
  const std::int64_t K = 32;
  const double y = default_extraction_height(K);
  std::vector<FourierLine> lines00, lines10;
  const std::size_t r = g11->group().cusps().size();
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      const LineSamples samples = sample_line(*g11, a, b, 1, 0, s25, y, default_sample_count(K));
      FourierLine l00{a, b, 0, 0, s25, y, {}, {}, 0.0};
      FourierLine l10{a, b, 1, 0, s25, y, {}, {}, 0.0};
      for (std::int64_t k = 1; k <= K; ++k) {
        l00.coefficients[k] = coefficient_from_line(samples, 0, 0, k);
        l10.coefficients[k] = coefficient_from_line(samples, 1, 0, k);
      }
      lines00.push_back(std::move(l00));
      lines10.push_back(std::move(l10));
    }
  const BoundReport b00 = coefficient_bound_check(0, 0, lines00);
  const BoundReport b10 = coefficient_bound_check(1, 0, lines10);
  out.checks.push_back(make_check("bound_margin_0_0", b00.margin, Relation::AtLeast, 1.5,
                                  "without log factor: " + short_g(b00.no_log_margin)));
  out.checks.push_back(make_check("bound_margin_1_0", b10.margin, Relation::AtLeast, 1.5,
                                  "without log factor: " + short_g(b10.no_log_margin)));
  return out;
}

}  // namespace eisen::verify
