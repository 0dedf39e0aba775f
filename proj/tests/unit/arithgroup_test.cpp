#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

#include "eisen/arithgroup.hpp"
#include "eisen/errors.hpp"

using namespace eisen;

namespace {

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++count;
  return count;
}

// N prod_{p | N} (1 + 1/p)
std::int64_t psi_index(std::int64_t N) {
  std::int64_t out = N, m = N;
  for (std::int64_t p = 2; p <= m; ++p)
    if (m % p == 0) {
      out = out / p * (p + 1);
      while (m % p == 0) m /= p;
    }
  return out;
}

std::size_t cusp_count(std::int64_t N) {
  std::size_t count = 0;
  for (std::int64_t d = 1; d <= N; ++d)
    if (N % d == 0) count += static_cast<std::size_t>(euler_phi(std::gcd(d, N / d)));
  return count;
}

}  // namespace

TEST_CASE("group elements multiply exactly and invert") {
  const GroupElement g(2, 1, 11, 6), h(3, 1, 11, 4);
  const GroupElement gh = g * h;
  CHECK(gh == GroupElement(17, 6, 99, 35));
  CHECK(g * g.inverse() == GroupElement::identity());
  CHECK(g.negated().sign_normalized() == g);
  CHECK(GroupElement(-1, 0, 0, -1).is_plus_minus_identity());
  CHECK_THROWS_AS(GroupElement(1, 1, 1, 1), InvalidMatrix);
}

TEST_CASE("index and cusps follow the classical counts") {
  for (std::int64_t N : {1, 2, 6, 11, 12, 25, 30}) {
    CAPTURE(N);
    const Gamma0 group(N);
    CHECK(group.index() == psi_index(N));
    CHECK(group.cusps().size() == cusp_count(N));
    std::int64_t widths = 0;
    for (const Cusp& c : group.cusps()) {
      widths += c.width;
      CHECK(std::abs(c.scaling.det() - 1.0) < 1e-12);
    }
    CHECK(widths == group.index());
    CHECK(group.coset_representatives().size() == static_cast<std::size_t>(group.index()));
  }
}

TEST_CASE("cusp order can be chosen by label") {
  const Gamma0 group(11, {"0", "inf"});
  CHECK(group.cusp(0).label == "0");
  CHECK(group.infinity_index() == 1);
  CHECK_THROWS(Gamma0(11, {"0", "1/2"}));
}

TEST_CASE("cosets at infinity count Euler phi over multiples of the level") {
  for (std::int64_t N : {1, 11, 12}) {
    CAPTURE(N);
    const Gamma0 group(N);
    const double c_max = 200.0;
    std::size_t expected = 1;  // the identity coset
    for (std::int64_t c = N; c <= 200; c += N) expected += static_cast<std::size_t>(euler_phi(c));
    CHECK(group.coset_count(group.infinity_index(), c_max) == expected);
  }
}

TEST_CASE("pair enumeration at infinity reproduces the single-cusp sequence") {
  const Gamma0 group(12);
  for (std::size_t a = 0; a < group.cusps().size(); ++a) {
    std::vector<std::tuple<std::int64_t, std::int64_t, GroupElement>> single, pair;
    group.for_each_coset(a, 150.0, [&](const CosetEntry& e) { single.emplace_back(e.c, e.d, e.gamma); });
    group.for_each_double_coset(a, group.infinity_index(), 150.0,
                                [&](const CosetEntry& e) { pair.emplace_back(e.c, e.d, e.gamma); });
    CHECK(single == pair);
  }
}

// Brute force over bottom rows (c, d) and top rows alpha0 + k c: a pair coset
// exists iff some lift base_a M base_b^{-1} lies in the group.
TEST_CASE("pair enumeration matches brute-force double cosets") {
  for (std::int64_t N : {6, 11}) {
    const Gamma0 group(N);
    const std::size_t r = group.cusps().size();
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        CAPTURE(N);
        CAPTURE(a);
        CAPTURE(b);
        const Cusp& ca = group.cusp(a);
        const Cusp& cb = group.cusp(b);
        const std::int64_t c_top = 30;
        const double c_max = static_cast<double>(c_top) * std::sqrt(double(ca.width * cb.width));
        std::set<std::pair<std::int64_t, std::int64_t>> listed;
        group.for_each_double_coset(a, b, c_max, [&](const CosetEntry& e) {
          CHECK(listed.emplace(e.c, e.d).second);
          const GroupElement m = ca.base.inverse() * e.gamma * cb.base;
          CHECK(group.contains(e.gamma));
          CHECK(m.c() == e.c);
          CHECK(m.d() == e.d);
        });
        std::set<std::pair<std::int64_t, std::int64_t>> brute;
        if (a == b) brute.emplace(0, 1);
        for (std::int64_t c = 1; c <= c_top; ++c)
          for (std::int64_t d = 0; d < c * cb.width; ++d) {
            if (std::gcd(c, d) != 1) continue;
            // alpha0 d - beta0 c = 1
            std::int64_t alpha0 = 0;
            while ((alpha0 * d - 1) % c != 0) ++alpha0;
            const std::int64_t beta0 = (alpha0 * d - 1) / c;
            for (std::int64_t k = 0; k < 4 * N * ca.width * cb.width; ++k) {
              const GroupElement m(alpha0 + k * c, beta0 + k * d, c, d);
              if (group.contains(ca.base * m * cb.base.inverse())) {
                brute.emplace(c, d);
                break;
              }
            }
          }
        CHECK(listed == brute);
      }
  }
}

TEST_CASE("pullback lands in the standard domain") {
  const Gamma0 level_one(1);
  for (double x : {-3.7, -0.2, 0.49, 5.1})
    for (double y : {0.001, 0.05, 0.7, 3.0}) {
      const UpperHalfPoint z(x, y);
      const Pullback p = level_one.pullback(z);
      CHECK(std::abs(p.point.x()) <= 0.5 + 1e-12);
      CHECK(std::norm(p.point.as_complex()) >= 1.0 - 1e-12);
      const UpperHalfPoint back = mobius(p.gamma, z);
      CHECK(std::abs(back.as_complex() - p.point.as_complex()) < 1e-9);
    }
}

TEST_CASE("point-pair invariant is Moebius invariant") {
  const UpperHalfPoint z(0.3, 0.8), w(-1.1, 2.5);
  const GroupElement g(5, 2, 22, 9);
  CHECK(point_pair_u(mobius(g, z), mobius(g, w)) == doctest::Approx(point_pair_u(z, w)).epsilon(1e-12));
}

TEST_CASE("level one heights") {
  const Gamma0 level_one(1);
  const UpperHalfPoint rho(0.5, std::sqrt(3.0) / 2.0);
  CHECK(level_one.domain_height(rho) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  CHECK(level_one.group_constants(50.0).c_gamma == doctest::Approx(1.0));
}

TEST_CASE("group config parsing") {
  CHECK(group_from_json(R"({"level": 11})").level() == 11);
  CHECK_THROWS_AS(group_from_json(R"({"level": 0})"), ConfigError);
  CHECK_THROWS_AS(group_from_json(R"({"level": "x"})"), ConfigError);
  CHECK_THROWS_AS(group_from_json("[1"), ConfigError);
}
