#pragma once

// Named verification suites shared by the command-line tool and the
// acceptance harness.  Every suite is a pure function of its options, so two
// runs with the same seed produce identical reports.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace eisen::verify {

enum class Relation { AtMost, AtLeast, Equal };

struct Check {
  std::string name;
  bool pass{false};
  double measured{0};
  double limit{0};
  Relation relation{Relation::AtMost};
  std::string note;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  bool pass() const;
  const Check& check(std::string_view name) const;
};

struct Options {
  std::uint64_t seed{0};
  // Overrides the per-suite truncation targets when positive.
  double tail_target{0};
};

// transformation, laplacian, order, heights, bessel, scattering, resolvent
const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(std::string_view name, const Options& options);

SuiteResult run_transformation(const Options& options);
SuiteResult run_laplacian(const Options& options);
SuiteResult run_order(const Options& options);
SuiteResult run_heights(const Options& options);
SuiteResult run_bessel(const Options& options);
SuiteResult run_scattering(const Options& options);
SuiteResult run_resolvent(const Options& options);

// Builds a check from a measurement; pass follows the relation.
Check make_check(std::string name, double measured, Relation relation, double limit, std::string note = {});

}  // namespace eisen::verify
