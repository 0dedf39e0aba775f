#include "eisen/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "eisen/errors.hpp"
#include "eisen/oracle.hpp"

namespace eisen {

namespace {

constexpr double kPi = std::numbers::pi;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Fourier-mode weight of one coset term: pi^s |k|^{s-1} / Gamma(s).
double mode_weight(cplx s, std::int64_t k) {
  const double ak = static_cast<double>(k < 0 ? -k : k);
  return std::abs(std::exp(s * std::log(kPi) + (s - 1.0) * std::log(ak)) / gamma_fn(s));
}

}  // namespace

double default_extraction_height(std::int64_t k) {
  if (k == 0) throw std::invalid_argument("extraction height needs k != 0");
  const double ak = static_cast<double>(k < 0 ? -k : k);
  return std::min(std::max(1.0 / std::sqrt(ak), 0.5), 2.5 / ak);
}

std::size_t default_sample_count(std::int64_t K) {
  const std::int64_t aK = K < 0 ? -K : K;
  return static_cast<std::size_t>(8 * aK + 32);
}

cplx LineSamples::dft(int i, int j, std::int64_t k) const {
  const auto M = static_cast<std::int64_t>(samples.size());
  if (M == 0) throw std::logic_error("empty line");
  cplx sum{}, comp{};
  for (std::int64_t t = 0; t < M; ++t) {
    const std::int64_t phase = ((k * t) % M + M) % M;
    const double angle = -2.0 * kPi * static_cast<double>(phase) / static_cast<double>(M);
    const cplx v = samples[static_cast<std::size_t>(t)].at(i, j) * cplx(std::cos(angle), std::sin(angle));
    const cplx u = sum + v;
    comp += (sum - u) + v;
    sum = u;
  }
  return (sum + comp) / static_cast<double>(M);
}

double LineSamples::tail(int i, int j) const {
  double t = 0.0;
  for (const auto& f : samples) t = std::max(t, f.tail(i, j));
  return t;
}

LineSamples sample_line(const EisensteinSystem& sys, std::size_t a, std::size_t b, int m, int n, cplx s, double y,
                        std::size_t M) {
  if (!(y > 0.0)) throw DomainError("line height must be positive");
  if (M == 0) throw std::invalid_argument("sample count must be positive");
  LineSamples line{a, b, m, n, s, y, {}, {}};
  line.samples.reserve(M);
  for (std::size_t t = 0; t < M; ++t) {
    const UpperHalfPoint zeta(static_cast<double>(t) / static_cast<double>(M), y);
    line.samples.push_back(eval_e_family_at(sys, a, b, m, n, zeta, s));
  }
  const double sigma = s.real();
  const double a0 = std::abs(std::sqrt(kPi) * gamma_fn(s - 0.5) / gamma_fn(s));
  for (double tail : line.samples.front().tails)
    line.coset_tail.push_back(tail / (a0 * std::pow(y, 1.0 - sigma)));
  return line;
}

CoefficientEstimate coefficient_from_line(const LineSamples& line, int i, int j, std::int64_t k) {
  if (k == 0) throw std::invalid_argument("use the constant-term extraction for k = 0");
  const cplx w = whittaker_w(line.s, k, UpperHalfPoint(0.0, line.y));
  if (std::abs(w) < 1e-280) throw DomainError("Whittaker factor underflows at this height; use a smaller y");
  const double tail = line.coset_tail.at(line.samples.front().slot(i, j)) * mode_weight(line.s, k);
  return {line.dft(i, j, k) / w, tail};
}

CoefficientEstimate extract_coefficient(const EisensteinSystem& sys, int m, int n, std::size_t a, std::size_t b,
                                        std::int64_t k, cplx s, double y, std::size_t M) {
  if (y == 0.0) y = default_extraction_height(k);
  if (M == 0) M = default_sample_count(k);
  const auto line = sample_line(sys, a, b, m, n, s, y, M);
  return coefficient_from_line(line, m, n, k);
}

ConstantTerm constant_from_lines(const LineSamples& low, const LineSamples& high, int i, int j) {
  const double y1 = low.y, y2 = high.y;
  if (std::abs(y1 - y2) < 1e-3 * std::max(y1, y2)) throw ConditioningError("constant-term heights too close");
  const cplx s = low.s;
  Eigen::Matrix2cd A;
  A << std::exp(s * std::log(y1)), std::exp((1.0 - s) * std::log(y1)), std::exp(s * std::log(y2)),
      std::exp((1.0 - s) * std::log(y2));
  const Eigen::Vector2cd rhs(low.dft(i, j, 0), high.dft(i, j, 0));
  const Eigen::Matrix2cd inv = A.inverse();
  const Eigen::Vector2cd c = inv * rhs;
  const double t1 = low.tail(i, j), t2 = high.tail(i, j);
  ConstantTerm out;
  out.c_s = c(0);
  out.c_1ms = c(1);
  out.tail_estimate = std::abs(inv(1, 0)) * t1 + std::abs(inv(1, 1)) * t2;
  const double cs_tail = std::abs(inv(0, 0)) * t1 + std::abs(inv(0, 1)) * t2;
  const double expected = (i == 0 && j == 0 && low.cusp_a == low.cusp_b) ? 1.0 : 0.0;
  out.delta_ok = std::abs(out.c_s - expected) <= std::max(1e-8, 10.0 * cs_tail);
  return out;
}

ConstantTerm extract_constant(const EisensteinSystem& sys, int m, int n, std::size_t a, std::size_t b, cplx s,
                              double y1, double y2, std::size_t M) {
  const auto low = sample_line(sys, a, b, m, n, s, y1, M);
  const auto high = sample_line(sys, a, b, m, n, s, y2, M);
  return constant_from_lines(low, high, m, n);
}

FourierLine extract_line(const EisensteinSystem& sys, int m, int n, std::size_t a, std::size_t b, cplx s,
                         std::int64_t K, std::pair<double, double> constant_heights) {
  if (K < 1) throw std::invalid_argument("K must be at least 1");
  FourierLine out;
  out.cusp_a = a;
  out.cusp_b = b;
  out.m = m;
  out.n = n;
  out.s = s;
  out.y = default_extraction_height(K);
  const auto line = sample_line(sys, a, b, m, n, s, out.y, default_sample_count(K));
  for (std::int64_t k = -K; k <= K; ++k)
    if (k != 0) out.coefficients[k] = coefficient_from_line(line, m, n, k);
  out.constant = extract_constant(sys, m, n, a, b, s, constant_heights.first, constant_heights.second);
  out.tolerance = out.constant.tail_estimate;
  for (const auto& [k, c] : out.coefficients) out.tolerance = std::max(out.tolerance, c.tail_estimate);
  return out;
}

double verify_expansion(const EisensteinSystem& sys, const FourierLine& line, std::span<const UpperHalfPoint> points) {
  const cplx s = line.s;
  double worst = 0.0;
  for (const auto& z : points) {
    const cplx direct = eval_e_family_at(sys, line.cusp_a, line.cusp_b, line.m, line.n, z, s).at(line.m, line.n);
    cplx series = line.constant.c_s * std::exp(s * std::log(z.y())) +
                  line.constant.c_1ms * std::exp((1.0 - s) * std::log(z.y()));
    for (const auto& [k, c] : line.coefficients) series += c.value * whittaker_w(s, k, z);
    worst = std::max(worst, std::abs(direct - series));
  }
  return worst;
}

ScatteringBlock assemble_scattering(int m, int n, const std::map<std::pair<int, int>, Eigen::MatrixXcd>& entries) {
  auto find = [&](int u, int v) -> const Eigen::MatrixXcd& {
    auto it = entries.find({u, v});
    if (it == entries.end())
      throw MissingIndex("missing scattering block (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    return it->second;
  };
  const auto r = static_cast<std::size_t>(find(0, 0).rows());
  ScatteringBlock out{m, n, {}, BlockMatrix(IndexSet(m, n), r)};
  for (int u = 0; u <= m; ++u)
    for (int v = 0; v <= n; ++v) {
      const auto& block = find(u, v);
      if (static_cast<std::size_t>(block.rows()) != r || static_cast<std::size_t>(block.cols()) != r)
        throw std::invalid_argument("scattering blocks differ in size");
      out.entries[{u, v}] = block;
    }
  const IndexSet& index = out.assembled.index;
  for (std::size_t row = 0; row < index.size(); ++row) {
    const auto [i1, i2] = index[row];
    for (std::size_t col = 0; col < index.size(); ++col) {
      const auto [j1, j2] = index[col];
      if (j1 < i1 || j2 < i2) continue;  // Phi^{u,v} = 0 for negative indices
      out.assembled.block(row, col) =
          binomial(m - i1, j1 - i1) * binomial(n - i2, j2 - i2) * out.entries.at({j1 - i1, j2 - i2});
    }
  }
  return out;
}

std::map<std::pair<int, int>, Eigen::MatrixXcd> extract_scattering(const EisensteinSystem& sys, int m, int n, cplx s,
                                                                   std::pair<double, double> heights) {
  const std::size_t r = sys.group().cusps().size();
  const auto R = static_cast<Eigen::Index>(r);
  std::map<std::pair<int, int>, Eigen::MatrixXcd> out;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j) out[{i, j}] = Eigen::MatrixXcd::Zero(R, R);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      const auto low = sample_line(sys, a, b, m, n, s, heights.first, 32);
      const auto high = sample_line(sys, a, b, m, n, s, heights.second, 32);
      for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= n; ++j)
          out[{i, j}](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
              constant_from_lines(low, high, i, j).c_1ms;
    }
  return out;
}

FunctionalEquationReport functional_equation_check(const EisensteinSystem& sys, int m, int n, cplx s,
                                                   std::span<const UpperHalfPoint> points) {
  if (m != 0 || n != 0)
    throw UnsupportedContinuation("continuation to 1 - s is only available for (m, n) = (0, 0)");
  if (!(s.real() > 1.0)) throw DomainError("functional equation check needs Re s > 1");
  const std::int64_t level = sys.group().level();
  if (level != 1 && !is_prime(level))
    throw UnsupportedContinuation("closed-form continuation needs level one or a prime level");
  if (!sys.character().is_trivial()) throw UnsupportedContinuation("closed-form continuation needs trivial character");

  const cplx t = 1.0 - s;
  FunctionalEquationReport report;
  const std::size_t r = sys.group().cusps().size();
  Eigen::MatrixXcd phi_s, phi_t;
  if (level == 1) {
    phi_s = Eigen::MatrixXcd::Constant(1, 1, oracle::sl2_scattering(s));
    phi_t = Eigen::MatrixXcd::Constant(1, 1, oracle::sl2_scattering(t));
  } else {
    phi_s = oracle::gamma0_prime_scattering(level, s);
    phi_t = oracle::gamma0_prime_scattering(level, t);
  }
  const Eigen::MatrixXcd product = phi_t * phi_s - Eigen::MatrixXcd::Identity(phi_s.rows(), phi_s.cols());
  report.product_residual = product.cwiseAbs().rowwise().sum().maxCoeff();

  for (const auto& z : points) {
    // Enough harmonics that the next W_s term is below 1e-30.
    const auto K = static_cast<std::int64_t>(std::ceil(70.0 / (2.0 * kPi * z.y()))) + 2;
    std::vector<cplx> at_s(r);
    for (std::size_t b = 0; b < r; ++b) at_s[b] = eval_e(sys, {0, 0, b}, z, s).value;
    for (std::size_t a = 0; a < r; ++a) {
      const cplx lhs = level == 1 ? oracle::sl2_expansion(z, t, K) : oracle::gamma0_prime_expansion(level, a, 0, z, t, K);
      cplx rhs = 0.0;
      for (std::size_t b = 0; b < r; ++b)
        rhs += phi_t(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) * at_s[b];
      report.expansion_residual = std::max(report.expansion_residual, std::abs(lhs - rhs));
    }
  }
  return report;
}

BoundReport coefficient_bound_check(int m, int n, std::span<const FourierLine> lines, double required_margin) {
  if (lines.empty()) throw std::invalid_argument("no coefficient lines");
  BoundReport report;
  const int order = m + n;
  auto ratios = [&](const FourierLine& line, bool with_log, bool held_out) {
    std::int64_t K = 0;
    for (const auto& [k, c] : line.coefficients) K = std::max<std::int64_t>(K, k < 0 ? -k : k);
    const double sigma = line.s.real();
    double worst = 0.0;
    for (const auto& [k, c] : line.coefficients) {
      const std::int64_t ak = k < 0 ? -k : k;
      if ((2 * ak > K) != held_out) continue;
      const double kd = static_cast<double>(ak);
      const double log_factor = with_log ? std::pow(std::log(kd), order) + 1.0 : 1.0;
      const double bound = log_factor * (std::pow(kd, sigma) + std::pow(kd, 1.0 - sigma));
      worst = std::max(worst, std::abs(c.value) / bound);
    }
    return worst;
  };
  double c_log = 0.0, held_log = 0.0, c_plain = 0.0, held_plain = 0.0;
  for (const auto& line : lines) {
    if (line.m != m || line.n != n) throw std::invalid_argument("line order differs from the requested (m, n)");
    c_log = std::max(c_log, ratios(line, true, false));
    held_log = std::max(held_log, ratios(line, true, true));
    c_plain = std::max(c_plain, ratios(line, false, false));
    held_plain = std::max(held_plain, ratios(line, false, true));
  }
  report.constant = c_log;
  report.worst_ratio = held_log;
  report.margin = held_log > 0.0 ? c_log / held_log : std::numeric_limits<double>::infinity();
  report.no_log_margin = held_plain > 0.0 ? c_plain / held_plain : std::numeric_limits<double>::infinity();
  report.pass = report.margin >= required_margin;
  return report;
}

}  // namespace eisen
