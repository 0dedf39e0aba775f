#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

#include "eisen/arithgroup.hpp"
#include "eisen/modform.hpp"
#include "eisen/specfun.hpp"

namespace eisen {

struct TruncationPolicy {
  double c_max{1000.0};
  double tail_target{1e-8};

  TruncationPolicy() = default;
  TruncationPolicy(double c_max_, double tail_target_);
};

// Pairs (i1, i2) with 0 <= i1 <= m, 0 <= i2 <= n in lexicographic order.
class IndexSet {
 public:
  IndexSet(int m, int n);
  int m() const { return m_; }
  int n() const { return n_; }
  std::size_t size() const { return pairs_.size(); }
  std::array<int, 2> operator[](std::size_t k) const { return pairs_[k]; }
  std::size_t position(int i1, int i2) const;

 private:
  int m_;
  int n_;
  std::vector<std::array<int, 2>> pairs_;
};

// N x N matrix made of r x r blocks indexed by IndexSet x IndexSet.
struct BlockMatrix {
  IndexSet index;
  std::size_t block_size;
  Eigen::MatrixXcd entries;

  BlockMatrix(IndexSet index_, std::size_t block_size_);
  std::size_t dimension() const { return index.size() * block_size; }
  Eigen::Block<Eigen::MatrixXcd> block(std::size_t row, std::size_t col);
  Eigen::MatrixXcd block(std::size_t row, std::size_t col) const;
};

struct SeriesValue {
  cplx value;
  double tail_estimate{0};
  bool truncation_warning{false};
};

// Every E^{i,j} (or Q^{i,j}) with i <= m, j <= n from one pass over the cosets.
struct SeriesFamily {
  int m{0};
  int n{0};
  std::vector<cplx> values;
  std::vector<double> tails;

  SeriesFamily(int m_, int n_);
  cplx& at(int i, int j) { return values[slot(i, j)]; }
  cplx at(int i, int j) const { return values[slot(i, j)]; }
  double tail(int i, int j) const { return tails[slot(i, j)]; }
  std::size_t slot(int i, int j) const;
};

struct EisVector {
  IndexSet index;
  std::size_t cusps;
  std::vector<cplx> values;
  std::vector<double> tails;
};

// A homomorphism from the group to C, weighting cosets in the series.  The
// shipped series use the pair (<., f>, conj <., g>); more homomorphisms fit the
// same slot.
class Homomorphism {
 public:
  virtual ~Homomorphism() = default;
  virtual cplx operator()(const GroupElement& gamma) const = 0;
};

class PeriodHomomorphism final : public Homomorphism {
 public:
  explicit PeriodHomomorphism(std::shared_ptr<const PeriodTable> table) : table_(std::move(table)) {}
  cplx operator()(const GroupElement& gamma) const override { return table_->symbol(gamma); }

 private:
  std::shared_ptr<const PeriodTable> table_;
};

// Y^s sum_n ((X + n)^2 + Y^2)^{-s} for fixed (s, Y), any real X.  The terms
// n = 0, -1 (after reducing X to [0, 1)) are summed directly; the rest is a
// piecewise Chebyshev interpolant in X built from direct terms plus a binomial
// series in Y^2/u^2 over Hurwitz zeta tails.
class TranslationSum {
 public:
  TranslationSum(cplx s, double Y);
  cplx operator()(double X) const;
  // The same sum by direct summation, for checking (slow).
  static cplx direct(cplx s, double X, double Y, long terms);

  static constexpr int kPieces = 8;
  static constexpr int kDegree = 14;

 private:
  cplx near(double u) const;
  cplx s_;
  double Y_;
  double log_Y_;
  bool real_;
  int half_power_{-1};  // 2s when s is a small positive half-integer, else -1
  std::vector<cplx> cheb_;        // kPieces blocks of kDegree + 1 coefficients
  std::vector<double> cheb_real_;
};

// Hurwitz zeta sum_{k>=0} (a + k)^{-p} by Euler-Maclaurin; needs a well above |p|/(2 pi).
cplx hurwitz_tail(cplx p, double a);

struct CosetTable;

// Group, forms, character and truncation for one family of series.
class EisensteinSystem {
 public:
  // Level one: only (m, n) = (0, 0) is available.
  EisensteinSystem(Gamma0 group, TruncationPolicy truncation);
  EisensteinSystem(Gamma0 group, std::shared_ptr<const CuspForm> f, std::shared_ptr<const CuspForm> g,
                   CharacterSpec chi, TruncationPolicy truncation);
  ~EisensteinSystem();
  EisensteinSystem(const EisensteinSystem&) = delete;
  EisensteinSystem& operator=(const EisensteinSystem&) = delete;

  const Gamma0& group() const { return group_; }
  const TruncationPolicy& truncation() const { return truncation_; }
  const CharacterSpec& character() const { return chi_; }
  bool has_forms() const { return static_cast<bool>(f_); }
  const CuspForm& form_f() const;
  const CuspForm& form_g() const;

  cplx symbol_f(const GroupElement& gamma) const;
  cplx symbol_g(const GroupElement& gamma) const;
  cplx chi(const GroupElement& gamma) const { return chi_(gamma); }
  // F_a and G_a: antiderivatives of f and g based at cusp a.
  const Antiderivative& antiderivative_f(std::size_t cusp) const;
  const Antiderivative& antiderivative_g(std::size_t cusp) const;

  // Cosets of Gamma_cusp \ Gamma / Gamma_at, built once per key.
  std::shared_ptr<const CosetTable> coset_table(std::size_t cusp, std::size_t at, bool with_symbols) const;

 private:
  Gamma0 group_;
  std::shared_ptr<const CuspForm> f_;
  std::shared_ptr<const CuspForm> g_;
  CharacterSpec chi_;
  TruncationPolicy truncation_;
  std::shared_ptr<const PeriodTable> table_f_;
  std::shared_ptr<const PeriodTable> table_g_;
  std::unique_ptr<Homomorphism> hom_f_;
  std::unique_ptr<Homomorphism> hom_g_;
  std::vector<Antiderivative> anti_f_;
  std::vector<Antiderivative> anti_g_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::tuple<std::size_t, std::size_t, bool>, std::shared_ptr<const CosetTable>> tables_;
};

struct SeriesRequest {
  int m{0};
  int n{0};
  std::size_t cusp{0};
};

// chi-bar(tau) (-<tau, f>)^i (-conj <tau, g>)^j
cplx s_cocycle(const EisensteinSystem& sys, int i, int j, const GroupElement& tau);

SeriesFamily eval_e_family(const EisensteinSystem& sys, std::size_t cusp, int m, int n,
                           const UpperHalfPoint& z, cplx s);
SeriesValue eval_e(const EisensteinSystem& sys, const SeriesRequest& req, const UpperHalfPoint& z, cplx s);
// E_a^{i,j}(sigma_b zeta), summed over Gamma_a \ Gamma / Gamma_b so that each
// term is an exact period-one translation sum in zeta.
SeriesFamily eval_e_family_at(const EisensteinSystem& sys, std::size_t cusp, std::size_t at, int m, int n,
                              const UpperHalfPoint& zeta, cplx s);

// Sum of chi(gamma) F_a(gamma z)^i conj(G_a(gamma z))^j Im(sigma_a^{-1} gamma z)^s.
// F_a(gamma z) is evaluated by its q-series where the expansion reaches the
// highest translate of gamma z and through F_a(z) + <gamma, f> elsewhere.
SeriesFamily eval_q_family(const EisensteinSystem& sys, std::size_t cusp, int m, int n,
                           const UpperHalfPoint& z, cplx s);
SeriesValue eval_q(const EisensteinSystem& sys, const SeriesRequest& req, const UpperHalfPoint& z, cplx s);

// Binomial conversions between the E and Q families at a point where F_a(z) = Fz, G_a(z) = Gz.
SeriesFamily convert_q_from_e(const SeriesFamily& e, cplx Fz, cplx Gz);
SeriesFamily convert_e_from_q(const SeriesFamily& q, cplx Fz, cplx Gz);

BlockMatrix pi_matrix(const EisensteinSystem& sys, int m, int n, const GroupElement& gamma);

// (E_a^{m-i1, n-i2})_a stacked over the index set.
EisVector assemble_vector(const EisensteinSystem& sys, int m, int n, const UpperHalfPoint& z, cplx s);
// The same from per-cusp families of order at least (m, n), e.g. one wider
// family shared by several vectors.
EisVector assemble_vector(std::span<const SeriesFamily> families, int m, int n);

// Iterated difference psi -> psi|gamma - psi with (psi|gamma)(z) = chi(gamma) psi(gamma z),
// applied to E_a^{m,n} once per element of the list and evaluated at z.
SeriesValue order_operator(const EisensteinSystem& sys, const SeriesRequest& req,
                           std::span<const GroupElement> gammas, const UpperHalfPoint& z, cplx s);

// sum over gamma in Gamma / {+-I} of S_{i,j}(gamma) G_ab(u(z, gamma z')) for u <= u_max.
SeriesValue automorphic_kernel(const EisensteinSystem& sys, int i, int j, const GreenParameter& p,
                               const UpperHalfPoint& z, const UpperHalfPoint& zp, double u_max);

struct ResolventGrid {
  double radius{8.0};
  int radial_level{6};
  int angular_min{64};
  double angular_factor{8.0};

  ResolventGrid doubled() const { return {radius, radial_level + 1, 2 * angular_min, 2.0 * angular_factor}; }
};

struct ResolventResult {
  double lhs{0};          // theta(w) / (lambda - a(1-a))
  double lhs_variant{0};  // -theta(w) / (lambda + a(1-a)), reported for comparison
  double rhs{0};          // int_H G_a(u(w, z)) theta(z) dmu(z) on the grid
  double rhs_doubled{0};  // same on the doubled grid
  double tail_estimate{0};
};

// theta(z) = Im(z)^s with real 1 < s < a - 1, lambda = s(1 - s).
ResolventResult resolvent_check(double s, double a, const UpperHalfPoint& w,
                                const ResolventGrid& grid = {});

}  // namespace eisen
