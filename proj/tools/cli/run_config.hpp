#pragma once

#include <json.hpp>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eisen/eisen.hpp"

namespace eisen::cli {

using Json = nlohmann::ordered_json;

// Overrides from flags and the environment, applied after the file.
struct Overrides {
  std::optional<double> tail_target;
  std::optional<std::uint64_t> seed;
};

struct EvalRequest {
  int m{0};
  int n{0};
  std::size_t cusp{0};
  UpperHalfPoint z;
  cplx s;
};

struct FourierRequest {
  int m{0};
  int n{0};
  std::size_t a{0};
  std::size_t b{0};
  cplx s;
  std::int64_t k_min{-5};
  std::int64_t k_max{5};
  std::pair<double, double> constant_heights{1.0, 1.5};
  bool verify_expansion{false};
  std::vector<UpperHalfPoint> verify_points;
};

// A validated run: the system plus command parameters, and the fully
// resolved document (defaults filled in) that outputs embed.
struct RunConfig {
  Json resolved;
  std::shared_ptr<const EisensteinSystem> system;
  std::vector<EvalRequest> requests;
  std::optional<FourierRequest> fourier;
  std::uint64_t seed{0};
  double tail_target{1e-8};
};

enum class Command { Evaluate, Fourier, Verify };

// Throws ConfigError on any schema problem; no computation happens before
// the whole document has been checked.
RunConfig load_config(const std::string& text, Command command, const Overrides& overrides);

// FNV-1a over the compact dump of the resolved document.
std::string config_hash(const Json& resolved);

}  // namespace eisen::cli
