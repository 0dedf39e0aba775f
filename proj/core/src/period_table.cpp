#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "eisen/errors.hpp"
#include "eisen/modform.hpp"
#include "number_theory.hpp"

namespace eisen {

namespace {

struct Observation {
  std::vector<std::size_t> edges;
  cplx value;
};

// Classes of the unimodular edges along the continued-fraction path from
// infinity to p/q (q > 0).  Edge k joins p_{k-1}/q_{k-1} to p_k/q_k.
template <class Visit>
void for_each_edge(std::int64_t p, std::int64_t q, Visit&& visit) {
  std::int64_t p_prev2 = 0, p_prev = 1, q_prev2 = 1, q_prev = 0;
  std::int64_t num = p, den = q;
  for (int k = 0; den != 0; ++k) {
    const std::int64_t a = detail::floor_div(num, den);
    const std::int64_t pk = a * p_prev + p_prev2;
    const std::int64_t qk = a * q_prev + q_prev2;
    // (p_{k-1}, p_k; q_{k-1}, q_k) has determinant (-1)^k; flip the first column when odd.
    visit(k % 2 == 0 ? q_prev : -q_prev, qk);
    p_prev2 = p_prev;
    p_prev = pk;
    q_prev2 = q_prev;
    q_prev = qk;
    const std::int64_t rem = num - a * den;
    num = den;
    den = rem;
  }
}

}  // namespace

PeriodTable::PeriodTable(std::shared_ptr<const CuspForm> form, std::int64_t level)
    : form_(std::move(form)), p1_(level), edge_(p1_.size()) {
  const std::size_t unknowns = p1_.size();
  const double y_min = minimum_height(*form_);
  const auto c_reach = static_cast<std::int64_t>(std::floor(1.0 / y_min));
  const std::int64_t j_reach = c_reach / level;
  if (j_reach < 2) throw PrecisionError("expansion too short to calibrate the period table");
  const std::int64_t j_fit = std::min<std::int64_t>(6, j_reach - 1);
  const std::int64_t j_check = std::min<std::int64_t>(j_fit + 3, j_reach);

  std::vector<std::vector<std::pair<std::size_t, double>>> relations;
  for (std::size_t x = 0; x < unknowns; ++x) {
    const auto [c, d] = p1_.representative(x);
    relations.push_back({{x, 1.0}, {p1_.index(d, -c), 1.0}});
    const std::size_t xu = p1_.index(d, -c - d);
    const auto [c1, d1] = p1_.representative(xu);
    const std::size_t xuu = p1_.index(d1, -c1 - d1);
    std::vector<std::pair<std::size_t, double>> row{{x, 1.0}};
    for (std::size_t idx : {xu, xuu}) {
      auto it = std::find_if(row.begin(), row.end(), [&](const auto& e) { return e.first == idx; });
      if (it == row.end()) row.emplace_back(idx, 1.0);
      else it->second += 1.0;
    }
    relations.push_back(std::move(row));
  }

  auto path_of = [](std::int64_t p, std::int64_t q, const ProjectiveLine& line) {
    std::vector<std::size_t> edges;
    for_each_edge(p, q, [&](std::int64_t c, std::int64_t d) { edges.push_back(line.index(c, d)); });
    return edges;
  };

  std::vector<Observation> fit, check;
  for (std::int64_t j = 1; j <= j_check; ++j) {
    const std::int64_t c = level * j;
    for (std::int64_t d = 1; d < c; ++d) {
      if (std::gcd(c, d) != 1) continue;
      const std::int64_t a = detail::inverse_mod(d, c);
      const GroupElement gamma(a, (a * d - 1) / c, c, d);
      Observation obs{path_of(gamma.a(), gamma.c(), p1_), modular_symbol(gamma, *form_)};
      (j <= j_fit ? fit : check).push_back(std::move(obs));
    }
  }
  // Boundary values at the cusps pin the component the closed symbols leave free.
  const Gamma0 group(level);
  for (const Cusp& cusp : group.cusps()) {
    if (cusp.is_infinity()) continue;
    fit.push_back({path_of(cusp.numerator, cusp.denominator, p1_),
                   cusp_value(*form_, cusp.numerator, cusp.denominator)});
  }

  const auto rows = static_cast<Eigen::Index>(relations.size() + fit.size());
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(unknowns));
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(rows, 2);
  Eigen::Index r = 0;
  for (const auto& rel : relations) {
    for (auto [idx, coeff] : rel) design(r, static_cast<Eigen::Index>(idx)) += coeff;
    ++r;
  }
  for (const auto& obs : fit) {
    for (std::size_t idx : obs.edges) design(r, static_cast<Eigen::Index>(idx)) += 1.0;
    rhs(r, 0) = obs.value.real();
    rhs(r, 1) = obs.value.imag();
    ++r;
  }
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> solver(design);
  const Eigen::MatrixXd solution = solver.solve(rhs);
  fit_residual_ = (design * solution - rhs).cwiseAbs().maxCoeff();
  for (std::size_t i = 0; i < unknowns; ++i)
    edge_[i] = {solution(static_cast<Eigen::Index>(i), 0), solution(static_cast<Eigen::Index>(i), 1)};
  fitted_ = fit.size();

  for (const auto& obs : check) {
    cplx sum = 0.0;
    for (std::size_t idx : obs.edges) sum += edge_[idx];
    validation_error_ = std::max(validation_error_, std::abs(sum - obs.value));
  }
  if (fit_residual_ > 1e-9 || validation_error_ > 1e-9)
    throw PrecisionError("period table disagrees with directly computed symbols");
}

cplx PeriodTable::path_integral(std::int64_t p, std::int64_t q) const {
  if (q == 0) return 0.0;
  if (q < 0) {
    p = -p;
    q = -q;
  }
  cplx sum = 0.0;
  for_each_edge(p, q, [&](std::int64_t c, std::int64_t d) { sum += edge_[p1_.index(c, d)]; });
  return sum;
}

cplx PeriodTable::symbol(const GroupElement& gamma) const {
  const GroupElement g = gamma.sign_normalized();
  if (g.c() == 0) return 0.0;
  return path_integral(g.a(), g.c());
}

}  // namespace eisen
