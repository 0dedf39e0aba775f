#include "eisen_verify/sampler.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace eisen::verify {

std::uint64_t Sampler::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Sampler::uniform(double lo, double hi) {
  const double unit = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

std::int64_t Sampler::integer(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("empty integer range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
  std::uint64_t r;
  do r = next();
  while (r >= limit);
  return lo + static_cast<std::int64_t>(r % span);
}

double Sampler::log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

GroupElement Sampler::group_element(std::int64_t level, std::int64_t bound) {
  if (level < 1 || bound < 1) throw std::invalid_argument("level and bound must be positive");
  const std::int64_t k_max = bound / level;
  for (;;) {
    const std::int64_t c = level * integer(-k_max, k_max);
    if (c == 0) {
      const std::int64_t sign = integer(0, 1) ? 1 : -1;
      return GroupElement(sign, integer(-bound, bound), 0, sign);
    }
    const std::int64_t d = integer(-bound, bound);
    if (std::gcd(c, d) != 1) continue;
    const std::int64_t m = c < 0 ? -c : c;
    // a d = 1 (mod |c|); list the admissible a within the bound and pick one.
    std::vector<std::int64_t> choices;
    for (std::int64_t a = -bound; a <= bound; ++a) {
      const std::int64_t r = ((a * d - 1) % m + m) % m;
      if (r != 0) continue;
      const std::int64_t b = (a * d - 1) / c;
      if (b >= -bound && b <= bound) choices.push_back(a);
    }
    if (choices.empty()) continue;
    const std::int64_t a = choices[static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(choices.size()) - 1))];
    return GroupElement(a, (a * d - 1) / c, c, d);
  }
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  Sampler mix(seed ^ (stream * 0xd1b54a32d192ed03ULL));
  return mix.next();
}

}  // namespace eisen::verify
