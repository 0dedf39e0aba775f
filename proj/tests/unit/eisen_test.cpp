#include <doctest.h>

#include <atomic>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <numbers>

#include "eisen/errors.hpp"
#include "eisen/oracle.hpp"
#include "eisen/parallel.hpp"
#include "fixtures.hpp"

using namespace eisen;

namespace {

constexpr double kCatalan = 0.915965594177219015054603514932;

Eigen::VectorXcd as_vector(const EisVector& v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.values.data(), static_cast<Eigen::Index>(v.values.size()));
}

}  // namespace

TEST_CASE("zeta against Boost") {
  for (double s : {-3.5, -0.5, 0.25, 0.75, 1.5, 2.0, 3.7, 10.0})
    CHECK(oracle::riemann_zeta(s).real() == doctest::Approx(boost::math::zeta(s)).epsilon(1e-12));
  CHECK_THROWS_AS(oracle::riemann_zeta(1.0), DomainError);
  // Hurwitz tail: zeta(p, 1) = zeta(p), zeta(p, a) - zeta(p, a + 1) = a^{-p}.
  CHECK(hurwitz_tail(3.0, 1.0 + 40.0).real() ==
        doctest::Approx(boost::math::zeta(3.0) - [] {
          double s = 0.0;
          for (int k = 1; k <= 40; ++k) s += std::pow(k, -3.0);
          return s;
        }()).epsilon(1e-12));
  const cplx p(4.2, 1.3);
  const double a = 35.5;
  CHECK(std::abs(hurwitz_tail(p, a) - hurwitz_tail(p, a + 1.0) - std::exp(-p * std::log(a))) < 1e-15);
}

TEST_CASE("translation sum against direct summation") {
  for (cplx s : {cplx(2.0), cplx(2.5), cplx(2.3, 0.7), cplx(1.6, -3.0)})
    for (double Y : {0.01, 0.3, 2.0})
      for (double X : {0.0, 0.17, 0.5, 0.93, -4.6}) {
        CAPTURE(s);
        CAPTURE(Y);
        CAPTURE(X);
        const TranslationSum sum(s, Y);
        const cplx direct = TranslationSum::direct(s, X, Y, 400000);
        CHECK(std::abs(sum(X) - direct) < 2e-8 * std::abs(direct));
      }
}

TEST_CASE("level one series at i matches the Epstein zeta value") {
  // sum' |m i + n|^{-4} = 4 zeta(2) L(2, chi_4), and E(i, 2) is that over 2 zeta(4).
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  const double zeta4 = std::pow(std::numbers::pi, 4) / 90.0;
  const double expected = 4.0 * zeta2 * kCatalan / (2.0 * zeta4);
  const SeriesValue v = eval_e(fixtures::level1(), {0, 0, 0}, UpperHalfPoint(0.0, 1.0), 2.0);
  CHECK(std::abs(v.value - expected) <= 2.0 * v.tail_estimate);
  CHECK(std::abs(v.value - expected) < 1e-6);
}

TEST_CASE("level one series against the lattice sum") {
  const UpperHalfPoint z(0.21, 0.93);
  const SeriesValue v = eval_e(fixtures::level1(), {0, 0, 0}, z, 3.0);
  CHECK(std::abs(v.value - oracle::sl2_lattice_sum(z, 3.0, 3000.0)) < 1e-9);
}

TEST_CASE("prime level series against the closed-form expansion") {
  const auto& sys = fixtures::level11();
  const UpperHalfPoint z(0.1, 0.8);
  const cplx s(2.5, 0.0);
  for (std::size_t a : {0u, 1u}) {
    const SeriesValue v = eval_e(sys, {0, 0, a}, z, s);
    const cplx want = oracle::gamma0_prime_expansion(11, a, 0, z, s, 30);
    CHECK(std::abs(v.value - want) <= 10.0 * v.tail_estimate + 1e-12);
  }
}

TEST_CASE("order zero series is invariant") {
  const auto& sys = fixtures::level11();
  const GroupElement g(4, 1, 11, 3);
  const UpperHalfPoint z(-3.0 / 11.0 + 0.02, 0.1);
  const cplx s(2.3, 0.7);
  const SeriesValue at_z = eval_e(sys, {0, 0, 0}, z, s);
  const SeriesValue at_gz = eval_e(sys, {0, 0, 0}, mobius(g, z), s);
  CHECK(std::abs(at_z.value - at_gz.value) <= 10.0 * (at_z.tail_estimate + at_gz.tail_estimate));
}

TEST_CASE("order one vector transforms through pi") {
  const auto& sys = fixtures::level11();
  const GroupElement g(3, 1, 11, 4);
  const UpperHalfPoint z(-4.0 / 11.0 - 0.01, 0.09);
  const cplx s(2.3, 0.7);
  const EisVector v = assemble_vector(sys, 1, 0, z, s);
  const EisVector w = assemble_vector(sys, 1, 0, mobius(g, z), s);
  double tails = 0.0;
  for (double t : v.tails) tails += t;
  for (double t : w.tails) tails += t;
  const Eigen::VectorXcd residual = as_vector(w) - pi_matrix(sys, 1, 0, g).entries * as_vector(v);
  CHECK(residual.cwiseAbs().maxCoeff() <= 10.0 * tails);
}

TEST_CASE("pi is a unipotent homomorphism") {
  const auto& sys = fixtures::level11();
  const GroupElement g(4, 1, 11, 3), h(2, 1, 11, 6);
  const BlockMatrix pg = pi_matrix(sys, 2, 1, g);
  const BlockMatrix ph = pi_matrix(sys, 2, 1, h);
  const BlockMatrix pgh = pi_matrix(sys, 2, 1, g * h);
  CHECK((pgh.entries - pg.entries * ph.entries).cwiseAbs().maxCoeff() < 1e-10);
  for (std::size_t k = 0; k < pg.index.size(); ++k) {
    CHECK((pg.block(k, k) - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-15);
    for (std::size_t l = 0; l < k; ++l) CHECK(pg.block(k, l).norm() == 0.0);
  }
  CHECK_THROWS_AS(pi_matrix(sys, 1, 0, GroupElement(1, 0, 1, 1)), InvalidMatrix);
}

TEST_CASE("Q and E families convert both ways") {
  const auto& sys = fixtures::level11();
  const UpperHalfPoint z(0.2, 0.6);
  const cplx s(2.3, 0.7);
  const SeriesFamily e = eval_e_family(sys, 0, 1, 1, z, s);
  const SeriesFamily q = eval_q_family(sys, 0, 1, 1, z, s);
  const cplx Fz = sys.antiderivative_f(0)(z), Gz = sys.antiderivative_g(0)(z);
  const SeriesFamily q_conv = convert_q_from_e(e, Fz, Gz);
  const SeriesFamily back = convert_e_from_q(q, Fz, Gz);
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j) {
      CHECK(std::abs(q.at(i, j) - q_conv.at(i, j)) < 1e-9);
      CHECK(std::abs(back.at(i, j) - e.at(i, j)) < 1e-9);
    }
}

TEST_CASE("results do not depend on the thread budget") {
  const auto& sys = fixtures::level11();
  const UpperHalfPoint z(0.31, 0.45);
  set_thread_budget(1);
  const SeriesFamily one = eval_e_family(sys, 1, 2, 1, z, cplx(2.3, 0.7));
  set_thread_budget(3);
  const SeriesFamily three = eval_e_family(sys, 1, 2, 1, z, cplx(2.3, 0.7));
  set_thread_budget(0);
  CHECK(one.values == three.values);
  CHECK(one.tails == three.tails);
}

TEST_CASE("parallel_for visits every index once") {
  set_thread_budget(4);
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
  set_thread_budget(0);
  for (const auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("series preconditions") {
  const auto& sys = fixtures::level11();
  const UpperHalfPoint z(0.0, 1.0);
  CHECK_THROWS_AS(eval_e(sys, {0, 0, 0}, z, 1.0), DomainError);
  CHECK_THROWS_AS(eval_e(sys, {0, 0, 0}, z, cplx(0.5, 3.0)), DomainError);
  CHECK_THROWS_AS(eval_e(fixtures::level1(), {1, 0, 0}, z, 2.0), UnsupportedForm);
  CHECK_THROWS_AS(eval_e(sys, {0, 0, 5}, z, 2.0), std::out_of_range);
  const SeriesFamily small = eval_e_family(sys, 0, 1, 0, z, 2.0);
  CHECK_THROWS_AS(small.at(0, 1), MissingIndex);
  const std::vector<SeriesFamily> families{small, small};
  CHECK_THROWS_AS(assemble_vector(families, 1, 1), MissingIndex);
  CHECK_THROWS_AS(TruncationPolicy(-1.0, 1e-8), InvalidTruncation);
}

TEST_CASE("index set ordering") {
  const IndexSet idx(2, 1);
  CHECK(idx.size() == 6);
  CHECK(idx[0] == std::array<int, 2>{0, 0});
  CHECK(idx[1] == std::array<int, 2>{0, 1});
  CHECK(idx.position(2, 1) == 5);
  CHECK_THROWS_AS(idx.position(3, 0), MissingIndex);
}
