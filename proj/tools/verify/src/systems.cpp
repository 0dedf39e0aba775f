#include "systems.hpp"

#include <map>
#include <mutex>
#include <tuple>
#include <utility>

namespace eisen::verify {

namespace {

// Enough terms for every height the suites reach through the period table.
constexpr std::size_t kEtaTerms = 600;

template <class Make>
std::shared_ptr<const EisensteinSystem> memo(std::int64_t level, double c_max, double tail_target, Make make) {
  static std::mutex mutex;
  static std::map<std::tuple<std::int64_t, double, double>, std::shared_ptr<const EisensteinSystem>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_tuple(level, c_max, tail_target);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto sys = make();
  cache.emplace(key, sys);
  return sys;
}

}  // namespace

std::shared_ptr<const EisensteinSystem> level11_system(double c_max, double tail_target) {
  return memo(11, c_max, tail_target, [&] {
    auto f = std::make_shared<const CuspForm>(eta_product_expansion(11, kEtaTerms));
    return std::make_shared<const EisensteinSystem>(Gamma0(11), f, f, CharacterSpec::trivial(),
                                                    TruncationPolicy(c_max, tail_target));
  });
}

std::shared_ptr<const EisensteinSystem> level1_system(double c_max, double tail_target) {
  return memo(1, c_max, tail_target, [&] {
    return std::make_shared<const EisensteinSystem>(Gamma0(1), TruncationPolicy(c_max, tail_target));
  });
}

}  // namespace eisen::verify
