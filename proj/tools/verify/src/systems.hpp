#pragma once

#include <cstdio>
#include <memory>
#include <string>

#include "eisen/eisen.hpp"

namespace eisen::verify {

// Gamma_0(11) with the eta-product newform for both f and g, trivial
// character.  Memoized per (c_max, tail_target) so suites in one process
// share coset tables.
std::shared_ptr<const EisensteinSystem> level11_system(double c_max, double tail_target);
std::shared_ptr<const EisensteinSystem> level1_system(double c_max, double tail_target);

// Short %g rendering for check notes.
inline std::string short_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline double target_or(double configured, double fallback) { return configured > 0.0 ? configured : fallback; }

}  // namespace eisen::verify
