#pragma once

#include <cstdint>

#include "eisen/arithgroup.hpp"

namespace eisen::verify {

// SplitMix64 with explicit mappings to ranges.  The standard distributions
// are implementation-defined, so they are avoided to keep reports portable.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform(double lo, double hi);                    // [lo, hi)
  std::int64_t integer(std::int64_t lo, std::int64_t hi);  // [lo, hi]
  double log_uniform(double lo, double hi);

  // Element of Gamma_0(N) with every entry bounded by `bound` in absolute value.
  GroupElement group_element(std::int64_t level, std::int64_t bound);

 private:
  std::uint64_t state_;
};

// Seed for a named stream, so suites do not share random sequences.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace eisen::verify
