#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "eisen/eisen.hpp"

namespace eisen::detail {

inline constexpr std::size_t kChunk = 4096;
inline constexpr int kMomentOrder = 4;

// One coset as seen by the summation kernels.
struct CosetRow {
  std::int32_t c;
  std::int32_t d;
  cplx sym_f;  // <gamma, f>, zero without forms
  cplx sym_g;
  cplx chi;
};

// Cosets of one cusp in enumeration order, optionally with symbols.
struct CosetTableStats {
  std::size_t count{0};
  double scaled_c_max{0};
  double kappa{0};  // count / scaled_c_max^2
  // Mean of |sf|^i |sg|^j over cosets with scaled c > scaled_c_max / 2.
  std::array<std::array<double, kMomentOrder + 1>, kMomentOrder + 1> band{};
};

}  // namespace eisen::detail

namespace eisen {

// Rows of Gamma_cusp \ Gamma / Gamma_at; at is the cusp of the evaluation chart.
struct CosetTable {
  std::size_t cusp{0};
  std::size_t at{0};
  bool with_symbols{false};
  std::vector<std::int32_t> c;
  std::vector<std::int32_t> d;
  std::vector<cplx> sym_f;
  std::vector<cplx> sym_g;
  std::vector<cplx> chi;
  detail::CosetTableStats stats;

  std::size_t size() const { return c.size(); }
  detail::CosetRow row(std::size_t k) const {
    return {c[k], d[k], with_symbols ? sym_f[k] : cplx{}, with_symbols ? sym_g[k] : cplx{},
            chi.empty() ? cplx{1.0} : chi[k]};
  }
};

}  // namespace eisen

namespace eisen::detail {

std::shared_ptr<const CosetTable> build_coset_table(const EisensteinSystem& sys, std::size_t cusp,
                                                    std::size_t at, bool with_symbols);

// Visits every coset row in order without keeping a table.  Used for large
// symbol-free sums; rows and statistics match build_coset_table exactly.
CosetTableStats stream_cosets(const EisensteinSystem& sys, std::size_t cusp, std::size_t at,
                              const std::function<void(std::size_t, const CosetRow&)>& visit);

// Whether a symbol-free table for this system would be large enough to stream.
bool prefer_streaming(const EisensteinSystem& sys, std::size_t cusp, std::size_t at);

}  // namespace eisen::detail
