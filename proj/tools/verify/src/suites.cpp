#include "eisen_verify/suites.hpp"

#include <cmath>
#include <stdexcept>

namespace eisen::verify {

bool SuiteResult::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

const Check& SuiteResult::check(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no check named " + std::string(name) + " in suite " + suite);
}

Check make_check(std::string name, double measured, Relation relation, double limit, std::string note) {
  Check c{std::move(name), false, measured, limit, relation, std::move(note)};
  if (std::isfinite(measured)) {
    switch (relation) {
      case Relation::AtMost: c.pass = measured <= limit; break;
      case Relation::AtLeast: c.pass = measured >= limit; break;
      case Relation::Equal: c.pass = measured == limit; break;
    }
  }
  return c;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"transformation", "laplacian", "order",     "heights",
                                              "bessel",         "scattering", "resolvent"};
  return names;
}

SuiteResult run_suite(std::string_view name, const Options& options) {
  if (name == "transformation") return run_transformation(options);
  if (name == "laplacian") return run_laplacian(options);
  if (name == "order") return run_order(options);
  if (name == "heights") return run_heights(options);
  if (name == "bessel") return run_bessel(options);
  if (name == "scattering") return run_scattering(options);
  if (name == "resolvent") return run_resolvent(options);
  throw std::invalid_argument("unknown suite: " + std::string(name));
}

}  // namespace eisen::verify
