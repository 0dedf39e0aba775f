#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "eisen/eisen.hpp"

namespace eisen {

// max(1/sqrt|k|, 0.5), capped at 2.5/|k| so that 2 pi |k| y stays below about
// 16 and the Bessel factor keeps most of its digits.
double default_extraction_height(std::int64_t k);
// 8K + 32 samples for top harmonic K.
std::size_t default_sample_count(std::int64_t K);

// Families E_a^{i,j}(sigma_b(x_t + iy), s), x_t = t/M, for t = 0..M-1.
struct LineSamples {
  std::size_t cusp_a{0};
  std::size_t cusp_b{0};
  int m{0};
  int n{0};
  cplx s;
  double y{0};
  std::vector<SeriesFamily> samples;
  // Per-slot coset tail with the y^{1-sigma} Bessel-mean factor removed; times
  // |pi^s |k|^{s-1} / Gamma(s)| it bounds the truncation error of mode k.
  std::vector<double> coset_tail;

  // (1/M) sum_t E^{i,j}(x_t) e^{-2 pi i k x_t}
  cplx dft(int i, int j, std::int64_t k) const;
  // Largest tail estimate over the samples for entry (i, j).
  double tail(int i, int j) const;
};

LineSamples sample_line(const EisensteinSystem& sys, std::size_t a, std::size_t b, int m, int n, cplx s, double y,
                        std::size_t M);

struct CoefficientEstimate {
  cplx value;
  double tail_estimate{0};
};

// phi_ab^{m,n}(k, s) from a sampled line.
CoefficientEstimate coefficient_from_line(const LineSamples& line, int i, int j, std::int64_t k);

// One line at height y (default from k) with M samples (default from |k|).
CoefficientEstimate extract_coefficient(const EisensteinSystem& sys, int m, int n, std::size_t a, std::size_t b,
                                        std::int64_t k, cplx s, double y = 0.0, std::size_t M = 0);

struct ConstantTerm {
  cplx c_s;      // coefficient of y^s
  cplx c_1ms;    // coefficient of y^{1-s}
  double tail_estimate{0};
  bool delta_ok{true};  // c_s matches delta_{(m,n),(0,0)} delta_ab within the tail budget
};

ConstantTerm constant_from_lines(const LineSamples& low, const LineSamples& high, int i, int j);
ConstantTerm extract_constant(const EisensteinSystem& sys, int m, int n, std::size_t a, std::size_t b, cplx s,
                              double y1, double y2, std::size_t M = 32);

struct FourierLine {
  std::size_t cusp_a{0};
  std::size_t cusp_b{0};
  int m{0};
  int n{0};
  cplx s;
  double y{0};
  std::map<std::int64_t, CoefficientEstimate> coefficients;  // 0 < |k| <= K
  ConstantTerm constant;
  double tolerance{0};
};

// Coefficients for 0 < |k| <= K from one line at the height suited to K, plus
// the constant term from two heights.
FourierLine extract_line(const EisensteinSystem& sys, int m, int n, std::size_t a, std::size_t b, cplx s,
                         std::int64_t K, std::pair<double, double> constant_heights = {1.0, 1.5});

// max_z |E_a(sigma_b z) - expansion truncated at the line's K|.
double verify_expansion(const EisensteinSystem& sys, const FourierLine& line,
                        std::span<const UpperHalfPoint> points);

struct ScatteringBlock {
  int m{0};
  int n{0};
  std::map<std::pair<int, int>, Eigen::MatrixXcd> entries;  // Phi^{i,j}(s), r x r
  BlockMatrix assembled;
};

// Block ((i1,i2),(j1,j2)) = binom(m-i1, j1-i1) binom(n-i2, j2-i2) Phi^{j1-i1, j2-i2}.
ScatteringBlock assemble_scattering(int m, int n, const std::map<std::pair<int, int>, Eigen::MatrixXcd>& entries);

// Phi^{i,j}(s) for all (i,j) <= (m,n) by two-height extraction over every cusp pair.
std::map<std::pair<int, int>, Eigen::MatrixXcd> extract_scattering(const EisensteinSystem& sys, int m, int n,
                                                                   cplx s,
                                                                   std::pair<double, double> heights = {1.0, 1.5});

struct FunctionalEquationReport {
  double product_residual{0};    // |phi(1-s)phi(s) - 1| or ||Phi(1-s)Phi(s) - I||_inf
  double expansion_residual{0};  // max |E(z,1-s) - Phi(1-s) E(z,s)| over the sample points
};

// Level one or prime level, (m, n) = (0, 0) only; other orders raise UnsupportedContinuation.
FunctionalEquationReport functional_equation_check(const EisensteinSystem& sys, int m, int n, cplx s,
                                                   std::span<const UpperHalfPoint> points);

struct BoundReport {
  double constant{0};       // fitted on the lower half of the k-range
  double worst_ratio{0};    // max |phi| / bound over the held-out half
  double margin{0};         // constant / worst_ratio
  double no_log_margin{0};  // the same with the log factor dropped (observation only)
  bool pass{false};
};

// Fit C with |phi(k)| <= C (log^{m+n}|k| + 1)(|k|^sigma + |k|^{1-sigma}) on the first
// half of the k-range of every line, then test the held-out half.
BoundReport coefficient_bound_check(int m, int n, std::span<const FourierLine> lines, double required_margin = 1.5);

}  // namespace eisen
