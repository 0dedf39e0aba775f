#include <doctest.h>

#include <cmath>

#include "eisen/errors.hpp"
#include "eisen/fourier.hpp"
#include "eisen/oracle.hpp"
#include "fixtures.hpp"

using namespace eisen;

TEST_CASE("extraction defaults") {
  CHECK(default_extraction_height(1) == doctest::Approx(1.0));
  CHECK(default_extraction_height(4) == doctest::Approx(0.5));
  CHECK(default_extraction_height(10) == doctest::Approx(0.25));
  CHECK(default_extraction_height(-10) == doctest::Approx(0.25));
  CHECK(default_sample_count(10) == 112);
}

TEST_CASE("level one coefficients and constant term") {
  const auto& sys = fixtures::level1();
  const cplx s(2.5, 0.0);
  for (std::int64_t k : {1, 2, -3}) {
    const CoefficientEstimate c = extract_coefficient(sys, 0, 0, 0, 0, k, s);
    CHECK(std::abs(c.value - oracle::sl2_coefficient(k, s)) < 1e-8 * std::abs(oracle::sl2_coefficient(k, s)));
  }
  const ConstantTerm ct = extract_constant(sys, 0, 0, 0, 0, s, 1.0, 1.5);
  CHECK(std::abs(ct.c_s - 1.0) < 1e-8);
  CHECK(std::abs(ct.c_1ms - oracle::sl2_scattering(s)) < 1e-8);
  CHECK(ct.delta_ok);
}

TEST_CASE("prime level coefficients between cusps") {
  const auto& sys = fixtures::level11();
  const cplx s(2.5, 0.0);
  for (auto [a, b] : {std::pair<std::size_t, std::size_t>{1, 0}, {0, 1}, {1, 1}}) {
    CAPTURE(a);
    CAPTURE(b);
    const CoefficientEstimate c = extract_coefficient(sys, 0, 0, a, b, 3, s);
    const cplx want = oracle::gamma0_prime_coefficient(11, a, b, 3, s);
    CHECK(std::abs(c.value - want) < 1e-7 * std::abs(want));
  }
}

TEST_CASE("expansion reproduces the series") {
  const auto& sys = fixtures::level1();
  const FourierLine line = extract_line(sys, 0, 0, 0, 0, 2.5, 6);
  CHECK(line.coefficients.size() == 12);
  const std::vector<UpperHalfPoint> points{UpperHalfPoint(0.1, 1.1), UpperHalfPoint(-0.4, 1.4)};
  CHECK(verify_expansion(sys, line, points) < 1e-6);
}

TEST_CASE("scattering blocks use binomial weights") {
  std::map<std::pair<int, int>, Eigen::MatrixXcd> entries;
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j) entries[{i, j}] = Eigen::MatrixXcd::Constant(2, 2, cplx(1.0 + i, 2.0 + j));
  const ScatteringBlock block = assemble_scattering(1, 1, entries);
  const IndexSet& idx = block.assembled.index;
  auto at = [&](int i1, int i2, int j1, int j2) {
    return block.assembled.block(idx.position(i1, i2), idx.position(j1, j2));
  };
  CHECK((at(0, 0, 1, 1) - entries[{1, 1}]).norm() == 0.0);
  CHECK((at(0, 0, 0, 1) - entries[{0, 1}]).norm() == 0.0);
  CHECK((at(1, 0, 1, 1) - entries[{0, 1}]).norm() == 0.0);
  CHECK(at(1, 1, 0, 0).norm() == 0.0);
  CHECK((at(1, 1, 1, 1) - entries[{0, 0}]).norm() == 0.0);
}

TEST_CASE("functional equation is limited to order zero") {
  const std::vector<UpperHalfPoint> points{UpperHalfPoint(0.0, 1.2)};
  const auto report = functional_equation_check(fixtures::level1(), 0, 0, 2.5, points);
  CHECK(report.product_residual < 1e-9);
  CHECK_THROWS_AS(functional_equation_check(fixtures::level11(), 1, 0, 2.5, points), UnsupportedContinuation);
}

TEST_CASE("coefficient bound fit") {
  auto line_with = [](double held_scale) {
    FourierLine line;
    line.s = 2.5;
    for (std::int64_t k = 1; k <= 8; ++k) {
      const double kd = static_cast<double>(k);
      const double bound = (std::log(kd) + 1.0) * (std::pow(kd, 2.5) + std::pow(kd, -1.5));
      line.coefficients[k] = {3.0 * bound * (2 * k > 8 ? held_scale : 1.0), 0.0};
    }
    line.m = 1;
    return line;
  };
  const std::vector<FourierLine> tight{line_with(1.0)};
  const BoundReport r = coefficient_bound_check(1, 0, tight);
  CHECK(r.constant == doctest::Approx(3.0));
  CHECK(r.margin == doctest::Approx(1.0));
  CHECK_FALSE(r.pass);
  const std::vector<FourierLine> decaying{line_with(0.5)};
  CHECK(coefficient_bound_check(1, 0, decaying).margin == doctest::Approx(2.0));
  CHECK_THROWS(coefficient_bound_check(0, 0, decaying));
}
