#include "coset_table.hpp"

#include <cmath>
#include <limits>

#include "eisen/errors.hpp"

namespace eisen::detail {

namespace {

class StatsBuilder {
 public:
  StatsBuilder(double scaled_c_max, double sqrt_width, bool with_symbols)
      : c_max_(scaled_c_max), sqrt_width_(sqrt_width), with_symbols_(with_symbols) {}

  void add(const CosetRow& row) {
    ++count_;
    if (!with_symbols_ || sqrt_width_ * row.c <= 0.5 * c_max_) return;
    ++band_count_;
    const double af = std::abs(row.sym_f);
    const double ag = std::abs(row.sym_g);
    double pf = 1.0;
    for (int i = 0; i <= kMomentOrder; ++i) {
      double pg = 1.0;
      for (int j = 0; j <= kMomentOrder; ++j) {
        sums_[i][j] += pf * pg;
        pg *= ag;
      }
      pf *= af;
    }
  }

  CosetTableStats finish() const {
    CosetTableStats s;
    s.count = count_;
    s.scaled_c_max = c_max_;
    s.kappa = static_cast<double>(count_) / (c_max_ * c_max_);
    for (int i = 0; i <= kMomentOrder; ++i)
      for (int j = 0; j <= kMomentOrder; ++j)
        s.band[i][j] = band_count_ ? sums_[i][j] / static_cast<double>(band_count_) : 0.0;
    s.band[0][0] = 1.0;
    return s;
  }

 private:
  double c_max_;
  double sqrt_width_;
  bool with_symbols_;
  std::size_t count_{0};
  std::size_t band_count_{0};
  std::array<std::array<double, kMomentOrder + 1>, kMomentOrder + 1> sums_{};
};

double sqrt_widths(const EisensteinSystem& sys, std::size_t cusp, std::size_t at) {
  return std::sqrt(static_cast<double>(sys.group().cusp(cusp).width * sys.group().cusp(at).width));
}

void for_each_row(const EisensteinSystem& sys, std::size_t cusp, std::size_t at, bool with_symbols,
                  const std::function<void(const CosetRow&)>& visit) {
  const bool need_elements = with_symbols || !sys.character().is_trivial();
  const double c_max = sys.truncation().c_max;
  const double d_span = c_max / sqrt_widths(sys, cusp, at) * static_cast<double>(sys.group().cusp(at).width);
  if (d_span >= static_cast<double>(std::numeric_limits<std::int32_t>::max()))
    throw InvalidTruncation("c_max too large for the coset table");
  sys.group().for_each_double_coset(
      cusp, at, c_max,
      [&](const CosetEntry& e) {
        CosetRow row{static_cast<std::int32_t>(e.c), static_cast<std::int32_t>(e.d), {}, {}, cplx{1.0}};
        if (need_elements) {
          row.chi = sys.chi(e.gamma);
          if (with_symbols) {
            row.sym_f = sys.symbol_f(e.gamma);
            row.sym_g = sys.symbol_g(e.gamma);
          }
        }
        visit(row);
      },
      need_elements);
}

}  // namespace

std::shared_ptr<const CosetTable> build_coset_table(const EisensteinSystem& sys, std::size_t cusp,
                                                    std::size_t at, bool with_symbols) {
  if (with_symbols && !sys.has_forms()) throw UnsupportedForm("symbol table needs cusp forms");
  auto table = std::make_shared<CosetTable>();
  table->cusp = cusp;
  table->at = at;
  table->with_symbols = with_symbols;
  StatsBuilder stats(sys.truncation().c_max, sqrt_widths(sys, cusp, at), with_symbols);
  const bool store_chi = !sys.character().is_trivial();
  for_each_row(sys, cusp, at, with_symbols, [&](const CosetRow& row) {
    table->c.push_back(row.c);
    table->d.push_back(row.d);
    if (with_symbols) {
      table->sym_f.push_back(row.sym_f);
      table->sym_g.push_back(row.sym_g);
    }
    if (store_chi) table->chi.push_back(row.chi);
    stats.add(row);
  });
  table->stats = stats.finish();
  return table;
}

CosetTableStats stream_cosets(const EisensteinSystem& sys, std::size_t cusp, std::size_t at,
                              const std::function<void(std::size_t, const CosetRow&)>& visit) {
  StatsBuilder stats(sys.truncation().c_max, sqrt_widths(sys, cusp, at), false);
  std::size_t k = 0;
  for_each_row(sys, cusp, at, false, [&](const CosetRow& row) {
    visit(k++, row);
    stats.add(row);
  });
  return stats.finish();
}

bool prefer_streaming(const EisensteinSystem& sys, std::size_t cusp, std::size_t at) {
  // At most about 0.31 c^2 width_at rows below c.
  const double c = sys.truncation().c_max / sqrt_widths(sys, cusp, at);
  return 0.31 * c * c * static_cast<double>(sys.group().cusp(at).width) > 4.0e6;
}

}  // namespace eisen::detail
