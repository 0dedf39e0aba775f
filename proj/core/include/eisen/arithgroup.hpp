#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eisen {

using cplx = std::complex<double>;

// Integer matrix of determinant one; multiplication is exact.
class GroupElement {
 public:
  constexpr GroupElement() = default;
  GroupElement(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

  static GroupElement identity() { return {}; }
  static GroupElement translation(std::int64_t k) { return {1, k, 0, 1}; }
  static GroupElement inversion() { return {0, -1, 1, 0}; }

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t d() const { return d_; }

  GroupElement inverse() const { return {d_, -b_, -c_, a_}; }
  GroupElement negated() const { return {-a_, -b_, -c_, -d_}; }
  // Representative of {g, -g} with c > 0, or c == 0 and d > 0.
  GroupElement sign_normalized() const;
  bool is_plus_minus_identity() const;

  friend GroupElement operator*(const GroupElement& x, const GroupElement& y);
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

 private:
  std::int64_t a_{1}, b_{0}, c_{0}, d_{1};
};

inline constexpr double kMatrixTolerance = 1e-10;

struct RealMatrix {
  double a{1}, b{0}, c{0}, d{1};

  static RealMatrix from(const GroupElement& g) {
    return {double(g.a()), double(g.b()), double(g.c()), double(g.d())};
  }
  double det() const { return a * d - b * c; }
  // Exact inverse for determinant one (the only kind this library builds).
  RealMatrix inverse() const { return {d, -b, -c, a}; }
  friend RealMatrix operator*(const RealMatrix& x, const RealMatrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }
};

class UpperHalfPoint {
 public:
  UpperHalfPoint(double x, double y);
  static UpperHalfPoint from(cplx z) { return {z.real(), z.imag()}; }

  double x() const { return x_; }
  double y() const { return y_; }
  cplx as_complex() const { return {x_, y_}; }

 private:
  double x_;
  double y_;
};

UpperHalfPoint mobius(const RealMatrix& g, const UpperHalfPoint& z);
UpperHalfPoint mobius(const GroupElement& g, const UpperHalfPoint& z);

// |z - w|^2 / (4 Im z Im w); invariant under simultaneous Moebius action.
double point_pair_u(const UpperHalfPoint& z, const UpperHalfPoint& w);

struct Cusp {
  std::string label;
  std::int64_t numerator{1};
  std::int64_t denominator{0};  // zero for the cusp at infinity
  std::int64_t width{1};
  GroupElement base;  // integer matrix sending infinity to the cusp
  RealMatrix scaling;  // base * diag(sqrt(width), 1/sqrt(width))

  bool is_infinity() const { return denominator == 0; }
};

// Points of P^1(Z/N): pairs (c : d) with gcd(c, d, N) = 1 modulo units.
class ProjectiveLine {
 public:
  explicit ProjectiveLine(std::int64_t level);

  std::int64_t level() const { return level_; }
  std::size_t size() const { return reps_.size(); }
  std::size_t index(std::int64_t c, std::int64_t d) const;
  std::pair<std::int64_t, std::int64_t> representative(std::size_t i) const { return reps_[i]; }

 private:
  std::int64_t level_;
  std::vector<std::int32_t> class_of_;  // N*N table, -1 for non-primitive pairs
  std::vector<std::pair<std::int64_t, std::int64_t>> reps_;
};

// One double coset of Gamma_a \ Gamma / Gamma_infinity.  (c, d) is the bottom
// row of base_a^{-1} gamma, with 0 <= d < c or (c, d) = (0, 1).  The pair
// enumeration reuses it with base_a^{-1} gamma base_b.
struct CosetEntry {
  std::int64_t c{0};
  std::int64_t d{1};
  GroupElement gamma;
};

struct GroupConstants {
  double c_gamma{0};
  std::map<std::pair<std::size_t, std::size_t>, double> c_ab;
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> minimal_entry;  // unscaled |C|
};

struct Pullback {
  UpperHalfPoint point;
  GroupElement gamma;  // gamma * z == point
};

class Gamma0 {
 public:
  explicit Gamma0(std::int64_t level);
  Gamma0(std::int64_t level, const std::vector<std::string>& cusp_order);

  std::int64_t level() const { return level_; }
  std::int64_t index() const { return static_cast<std::int64_t>(p1_.size()); }
  const std::vector<Cusp>& cusps() const { return cusps_; }
  const Cusp& cusp(std::size_t i) const { return cusps_.at(i); }
  std::size_t cusp_index(std::string_view label) const;
  const ProjectiveLine& projective_line() const { return p1_; }

  bool contains(const GroupElement& g) const;
  bool cusps_equivalent(std::int64_t p1, std::int64_t q1, std::int64_t p2, std::int64_t q2) const;

  // Whether bottom row (c, d) of base_a^{-1} gamma belongs to some gamma in the group.
  bool coset_admissible(std::size_t cusp, std::int64_t c, std::int64_t d) const;
  GroupElement coset_element(std::size_t cusp, std::int64_t c, std::int64_t d) const;

  // Ordered by scaled |c| = sqrt(width) * c, then d.
  std::vector<GroupElement> coset_enumerate(std::size_t cusp, double c_max) const;
  // Streams the same sequence without materializing it.  When with_elements
  // is false, CosetEntry::gamma is left as the identity.
  void for_each_coset(std::size_t cusp, double c_max,
                      const std::function<void(const CosetEntry&)>& visit,
                      bool with_elements = true) const;
  std::size_t coset_count(std::size_t cusp, double c_max) const;

  // Gamma_a \ Gamma / Gamma_b through the bottom row (c, d) of
  // base_a^{-1} gamma base_b, with 0 <= d < c * width_b, or (0, 1) when a == b.
  // Ordered by scaled c = sqrt(width_a width_b) c, capped at c_max.  With b the
  // cusp at infinity this is the for_each_coset sequence.
  void for_each_double_coset(std::size_t a, std::size_t b, double c_max,
                             const std::function<void(const CosetEntry&)>& visit,
                             bool with_elements = true) const;
  GroupElement double_coset_element(std::size_t a, std::size_t b, std::int64_t c, std::int64_t d) const;
  std::size_t infinity_index() const;

  // Coset representatives of the group in SL2(Z), one per point of P^1(Z/N).
  const std::vector<GroupElement>& coset_representatives() const { return reps_; }

  Pullback pullback(const UpperHalfPoint& z) const;
  double domain_height(const UpperHalfPoint& z) const;
  double invariant_height(const UpperHalfPoint& z, double c_max) const;
  GroupConstants group_constants(double c_max) const;

 private:
  void build_cusps();
  void build_coset_representatives();

  std::int64_t level_;
  ProjectiveLine p1_;
  std::vector<Cusp> cusps_;
  std::vector<GroupElement> reps_;
};

std::vector<Cusp> cusps_of_gamma0(std::int64_t level);

// Reduction to the standard domain |x| <= 1/2, |z| >= 1 of SL2(Z).
Pullback reduce_modular(const UpperHalfPoint& z);

// { "level": N, "cusp_order": [...] }
Gamma0 group_from_json(std::string_view text);

}  // namespace eisen
