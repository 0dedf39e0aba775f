#pragma once

#include <map>
#include <memory>

#include "eisen/eisen.hpp"

namespace fixtures {

// Gamma_0(11), eta-product form for f and g, trivial character.
inline const eisen::EisensteinSystem& level11(double c_max = 1100.0) {
  static const auto form = std::make_shared<const eisen::CuspForm>(eisen::eta_product_expansion(11, 600));
  static std::map<double, std::unique_ptr<eisen::EisensteinSystem>> systems;
  auto& slot = systems[c_max];
  if (!slot)
    slot = std::make_unique<eisen::EisensteinSystem>(eisen::Gamma0(11), form, form, eisen::CharacterSpec::trivial(),
                                                     eisen::TruncationPolicy(c_max, 1e-8));
  return *slot;
}

inline const eisen::EisensteinSystem& level1(double c_max = 1000.0) {
  static eisen::EisensteinSystem sys(eisen::Gamma0(1), eisen::TruncationPolicy(c_max, 1e-8));
  return sys;
}

}  // namespace fixtures
