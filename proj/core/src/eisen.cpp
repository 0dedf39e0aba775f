#include "eisen/eisen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "coset_table.hpp"
#include "eisen/errors.hpp"
#include "eisen/parallel.hpp"

namespace eisen {

namespace {

constexpr int kMaxOrder = 4;

// Neumaier-compensated complex sum.
struct CompensatedSum {
  cplx sum{};
  cplx comp{};

  static void add_part(double& s, double& c, double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  void add(cplx v) {
    double sr = sum.real(), si = sum.imag(), cr = comp.real(), ci = comp.imag();
    add_part(sr, cr, v.real());
    add_part(si, ci, v.imag());
    sum = {sr, si};
    comp = {cr, ci};
  }
  cplx value() const { return sum + comp; }
};

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void require_convergent(cplx s) {
  if (!(s.real() > 1.0)) throw DomainError("series need Re s > 1");
}

void require_order(const EisensteinSystem& sys, int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("orders must be nonnegative");
  if (m + n > kMaxOrder) throw std::invalid_argument("m + n is limited to 4");
  if ((m > 0 || n > 0) && !sys.has_forms()) throw UnsupportedForm("m + n > 0 needs cusp forms f and g");
}

// Weight of one coset before the symbol powers:
// chi (w_a w_b c^2)^{-s} h(x + d / (c w_b)), and y^s for the identity.
class CosetWeight {
 public:
  CosetWeight(cplx s, const UpperHalfPoint& z, double width_a, double width_b, const TranslationSum& h)
      : s_(s), x_(z.x()), width_ab_(width_a * width_b), width_b_(width_b), h_(h),
        identity_(std::exp(s * std::log(z.y()))) {}

  cplx operator()(std::int32_t c, std::int32_t d) {
    if (c == 0) return identity_;
    if (c != last_c_) {
      last_c_ = c;
      const double cc = static_cast<double>(c);
      const double log_norm = std::log(width_ab_ * cc * cc);
      pow_c_ = s_.imag() == 0.0 ? cplx{std::exp(-s_.real() * log_norm)} : std::exp(-s_ * log_norm);
      inv_shift_ = 1.0 / (cc * width_b_);
    }
    return pow_c_ * h_(x_ + static_cast<double>(d) * inv_shift_);
  }

 private:
  cplx s_;
  double x_;
  double width_ab_;
  double width_b_;
  const TranslationSum& h_;
  cplx identity_;
  std::int32_t last_c_{-1};
  cplx pow_c_{};
  double inv_shift_{0};
};

// |A_0| kappa C^{2-2 sigma} / (sigma - 1) with a logarithmic correction for
// the growth of the symbol powers.
std::vector<double> tail_estimates(const detail::CosetTableStats& stats, int m, int n, cplx s, double y) {
  const double sigma = s.real();
  const double C = stats.scaled_c_max;
  const cplx a0 = std::sqrt(std::numbers::pi) * gamma_fn(s - 0.5) / gamma_fn(s) * std::pow(y, 1.0 - sigma);
  const double base = std::abs(a0) * stats.kappa * std::pow(C, 2.0 - 2.0 * sigma) / (sigma - 1.0);
  const double logC = std::log(std::max(C, 2.0));
  std::vector<double> out;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j)
      out.push_back(base * stats.band[i][j] * (1.0 + (i + j) / ((2.0 * sigma - 2.0) * logC)));
  return out;
}

// Adds w * sf^i * conj(sg)^j into slots (i, j) of a family-shaped accumulator.
void accumulate(std::vector<CompensatedSum>& acc, int m, int n, cplx w, cplx pf_base, cplx pg_base) {
  cplx pf = w;
  for (int i = 0; i <= m; ++i) {
    cplx term = pf;
    for (int j = 0; j <= n; ++j) {
      acc[static_cast<std::size_t>(i * (n + 1) + j)].add(term);
      term *= pg_base;
    }
    pf *= pf_base;
  }
}

SeriesFamily reduce_chunks(const std::vector<std::vector<CompensatedSum>>& chunks, int m, int n) {
  SeriesFamily fam(m, n);
  std::vector<CompensatedSum> total(fam.values.size());
  for (const auto& chunk : chunks)
    for (std::size_t k = 0; k < total.size(); ++k) total[k].add(chunk[k].value());
  for (std::size_t k = 0; k < total.size(); ++k) fam.values[k] = total[k].value();
  return fam;
}

}  // namespace

TruncationPolicy::TruncationPolicy(double c_max_, double tail_target_) : c_max(c_max_), tail_target(tail_target_) {
  if (!(c_max > 0.0) || !std::isfinite(c_max)) throw InvalidTruncation("c_max must be positive and finite");
  if (!(tail_target > 0.0)) throw InvalidTruncation("tail target must be positive");
}

IndexSet::IndexSet(int m, int n) : m_(m), n_(n) {
  if (m < 0 || n < 0) throw std::invalid_argument("index set orders must be nonnegative");
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j) pairs_.push_back({i, j});
}

std::size_t IndexSet::position(int i1, int i2) const {
  if (i1 < 0 || i1 > m_ || i2 < 0 || i2 > n_) throw MissingIndex("index outside the set");
  return static_cast<std::size_t>(i1 * (n_ + 1) + i2);
}

BlockMatrix::BlockMatrix(IndexSet index_, std::size_t block_size_)
    : index(std::move(index_)), block_size(block_size_),
      entries(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(index.size() * block_size),
                                     static_cast<Eigen::Index>(index.size() * block_size))) {}

Eigen::Block<Eigen::MatrixXcd> BlockMatrix::block(std::size_t row, std::size_t col) {
  const auto r = static_cast<Eigen::Index>(block_size);
  return entries.block(static_cast<Eigen::Index>(row) * r, static_cast<Eigen::Index>(col) * r, r, r);
}

Eigen::MatrixXcd BlockMatrix::block(std::size_t row, std::size_t col) const {
  const auto r = static_cast<Eigen::Index>(block_size);
  return entries.block(static_cast<Eigen::Index>(row) * r, static_cast<Eigen::Index>(col) * r, r, r);
}

SeriesFamily::SeriesFamily(int m_, int n_)
    : m(m_), n(n_), values(static_cast<std::size_t>((m_ + 1) * (n_ + 1))),
      tails(static_cast<std::size_t>((m_ + 1) * (n_ + 1)), 0.0) {}

std::size_t SeriesFamily::slot(int i, int j) const {
  if (i < 0 || i > m || j < 0 || j > n) throw MissingIndex("family has no entry (" + std::to_string(i) + ", " +
                                                           std::to_string(j) + ")");
  return static_cast<std::size_t>(i * (n + 1) + j);
}

EisensteinSystem::EisensteinSystem(Gamma0 group, TruncationPolicy truncation)
    : group_(std::move(group)), chi_(CharacterSpec::trivial()), truncation_(truncation) {}

EisensteinSystem::EisensteinSystem(Gamma0 group, std::shared_ptr<const CuspForm> f,
                                   std::shared_ptr<const CuspForm> g, CharacterSpec chi,
                                   TruncationPolicy truncation)
    : group_(std::move(group)), f_(std::move(f)), g_(std::move(g)), chi_(std::move(chi)),
      truncation_(truncation) {
  if (!f_ || !g_) throw UnsupportedForm("both forms are required");
  if (f_->level() != group_.level() || g_->level() != group_.level())
    throw UnsupportedForm("form level differs from the group level");
  chi_.validate(group_);
  table_f_ = std::make_shared<const PeriodTable>(f_, group_.level());
  table_g_ = (g_ == f_) ? table_f_ : std::make_shared<const PeriodTable>(g_, group_.level());
  hom_f_ = std::make_unique<PeriodHomomorphism>(table_f_);
  hom_g_ = std::make_unique<PeriodHomomorphism>(table_g_);
  for (const auto& cusp : group_.cusps()) {
    anti_f_.emplace_back(f_, cusp);
    anti_g_.emplace_back(g_, cusp);
  }
}

EisensteinSystem::~EisensteinSystem() = default;

const CuspForm& EisensteinSystem::form_f() const {
  if (!f_) throw UnsupportedForm("no cusp forms configured");
  return *f_;
}

const CuspForm& EisensteinSystem::form_g() const {
  if (!g_) throw UnsupportedForm("no cusp forms configured");
  return *g_;
}

cplx EisensteinSystem::symbol_f(const GroupElement& gamma) const {
  if (!hom_f_) throw UnsupportedForm("no cusp forms configured");
  return (*hom_f_)(gamma);
}

cplx EisensteinSystem::symbol_g(const GroupElement& gamma) const {
  if (!hom_g_) throw UnsupportedForm("no cusp forms configured");
  return (*hom_g_)(gamma);
}

const Antiderivative& EisensteinSystem::antiderivative_f(std::size_t cusp) const {
  if (anti_f_.empty()) throw UnsupportedForm("no cusp forms configured");
  return anti_f_.at(cusp);
}

const Antiderivative& EisensteinSystem::antiderivative_g(std::size_t cusp) const {
  if (anti_g_.empty()) throw UnsupportedForm("no cusp forms configured");
  return anti_g_.at(cusp);
}

std::shared_ptr<const CosetTable> EisensteinSystem::coset_table(std::size_t cusp, std::size_t at,
                                                                bool with_symbols) const {
  if (cusp >= group_.cusps().size() || at >= group_.cusps().size()) throw std::out_of_range("cusp index");
  std::lock_guard lock(cache_mutex_);
  auto key = std::make_tuple(cusp, at, with_symbols);
  auto it = tables_.find(key);
  if (it != tables_.end()) return it->second;
  auto table = detail::build_coset_table(*this, cusp, at, with_symbols);
  tables_.emplace(key, table);
  return table;
}

cplx s_cocycle(const EisensteinSystem& sys, int i, int j, const GroupElement& tau) {
  if (i < 0 || j < 0) throw std::invalid_argument("cocycle orders must be nonnegative");
  cplx out = std::conj(sys.chi(tau));
  if (i > 0) out *= std::pow(-sys.symbol_f(tau), i);
  if (j > 0) out *= std::pow(-std::conj(sys.symbol_g(tau)), j);
  return out;
}

SeriesFamily eval_e_family(const EisensteinSystem& sys, std::size_t cusp, int m, int n, const UpperHalfPoint& z,
                           cplx s) {
  return eval_e_family_at(sys, cusp, sys.group().infinity_index(), m, n, z, s);
}

SeriesFamily eval_e_family_at(const EisensteinSystem& sys, std::size_t cusp, std::size_t at, int m, int n,
                              const UpperHalfPoint& z, cplx s) {
  require_convergent(s);
  require_order(sys, m, n);
  const double width_a = static_cast<double>(sys.group().cusp(cusp).width);
  const double width_b = static_cast<double>(sys.group().cusp(at).width);
  const bool symbols = m > 0 || n > 0;
  const std::size_t slots = static_cast<std::size_t>((m + 1) * (n + 1));

  if (!symbols && detail::prefer_streaming(sys, cusp, at)) {
    std::vector<std::vector<CompensatedSum>> chunks;
    const TranslationSum h(s, z.y());
    CosetWeight weight(s, z, width_a, width_b, h);
    auto stats = detail::stream_cosets(sys, cusp, at, [&](std::size_t k, const detail::CosetRow& row) {
      if (k % detail::kChunk == 0) chunks.emplace_back(slots);
      chunks.back()[0].add(row.chi * weight(row.c, row.d));
    });
    auto fam = reduce_chunks(chunks, m, n);
    fam.tails = tail_estimates(stats, m, n, s, z.y());
    return fam;
  }

  auto table = sys.coset_table(cusp, at, symbols);
  const std::size_t count = table->size();
  const std::size_t nchunks = (count + detail::kChunk - 1) / detail::kChunk;
  std::vector<std::vector<CompensatedSum>> chunks(nchunks, std::vector<CompensatedSum>(slots));
  const TranslationSum h(s, z.y());
  parallel_for(nchunks, [&](std::size_t chunk) {
    CosetWeight weight(s, z, width_a, width_b, h);
    const std::size_t lo = chunk * detail::kChunk;
    const std::size_t hi = std::min(count, lo + detail::kChunk);
    auto& acc = chunks[chunk];
    for (std::size_t k = lo; k < hi; ++k) {
      const auto row = table->row(k);
      const cplx w = row.chi * weight(row.c, row.d);
      if (symbols)
        accumulate(acc, m, n, w, row.sym_f, std::conj(row.sym_g));
      else
        acc[0].add(w);
    }
  });
  auto fam = reduce_chunks(chunks, m, n);
  fam.tails = tail_estimates(table->stats, m, n, s, z.y());
  return fam;
}

SeriesValue eval_e(const EisensteinSystem& sys, const SeriesRequest& req, const UpperHalfPoint& z, cplx s) {
  auto fam = eval_e_family(sys, req.cusp, req.m, req.n, z, s);
  const double tail = fam.tail(req.m, req.n);
  return {fam.at(req.m, req.n), tail, tail > sys.truncation().tail_target};
}

SeriesFamily eval_q_family(const EisensteinSystem& sys, std::size_t cusp, int m, int n, const UpperHalfPoint& z,
                           cplx s) {
  require_convergent(s);
  require_order(sys, m, n);
  if (m == 0 && n == 0) return eval_e_family(sys, cusp, 0, 0, z, s);

  const auto& group = sys.group();
  const auto& F = sys.antiderivative_f(cusp);
  const auto& G = sys.antiderivative_g(cusp);
  const cplx Fz = F(z);
  const cplx Gz = G(z);
  const std::size_t inf = group.infinity_index();
  const double width_a = static_cast<double>(group.cusp(cusp).width);
  const double width_b = static_cast<double>(group.cusp(inf).width);
  const std::size_t terms_f = sys.form_f().terms();
  const std::size_t terms_g = sys.form_g().terms();

  auto table = sys.coset_table(cusp, inf, true);
  const std::size_t count = table->size();
  const std::size_t nchunks = (count + detail::kChunk - 1) / detail::kChunk;
  const std::size_t slots = static_cast<std::size_t>((m + 1) * (n + 1));
  std::vector<std::vector<CompensatedSum>> chunks(nchunks, std::vector<CompensatedSum>(slots));

  const TranslationSum h(s, z.y());
  parallel_for(nchunks, [&](std::size_t chunk) {
    CosetWeight weight(s, z, width_a, width_b, h);
    const std::size_t lo = chunk * detail::kChunk;
    const std::size_t hi = std::min(count, lo + detail::kChunk);
    auto& acc = chunks[chunk];
    for (std::size_t k = lo; k < hi; ++k) {
      const auto row = table->row(k);
      cplx fa = Fz + row.sym_f;
      cplx ga = Gz + row.sym_g;
      const GroupElement gamma = group.double_coset_element(cusp, inf, row.c, row.d);
      // F_a(gamma (z + n)) does not depend on n; use the translate highest in H.
      double shift = 0.0;
      if (gamma.c() != 0)
        shift = std::round(-z.x() - static_cast<double>(gamma.d()) / static_cast<double>(gamma.c()));
      const UpperHalfPoint image = mobius(gamma, UpperHalfPoint(z.x() + shift, z.y()));
      if (required_terms(sys.form_f(), image.y()) <= terms_f) fa = F(image);
      if (required_terms(sys.form_g(), image.y()) <= terms_g) ga = G(image);
      accumulate(acc, m, n, row.chi * weight(row.c, row.d), fa, std::conj(ga));
    }
  });
  auto fam = reduce_chunks(chunks, m, n);

  const auto e_tails = tail_estimates(table->stats, m, n, s, z.y());
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j) {
      double t = 0.0;
      for (int a = 0; a <= i; ++a)
        for (int b = 0; b <= j; ++b)
          t += binomial(i, a) * binomial(j, b) * std::pow(std::abs(Fz), i - a) * std::pow(std::abs(Gz), j - b) *
               e_tails[static_cast<std::size_t>(a * (n + 1) + b)];
      fam.tails[fam.slot(i, j)] = t;
    }
  return fam;
}

SeriesValue eval_q(const EisensteinSystem& sys, const SeriesRequest& req, const UpperHalfPoint& z, cplx s) {
  auto fam = eval_q_family(sys, req.cusp, req.m, req.n, z, s);
  const double tail = fam.tail(req.m, req.n);
  return {fam.at(req.m, req.n), tail, tail > sys.truncation().tail_target};
}

namespace {

SeriesFamily convert(const SeriesFamily& in, cplx Fz, cplx Gz) {
  if (in.values.size() != static_cast<std::size_t>((in.m + 1) * (in.n + 1)))
    throw MissingIndex("conversion needs the complete family");
  SeriesFamily out(in.m, in.n);
  const cplx Gc = std::conj(Gz);
  for (int i = 0; i <= in.m; ++i)
    for (int j = 0; j <= in.n; ++j) {
      cplx v = 0.0;
      double t = 0.0;
      for (int a = 0; a <= i; ++a)
        for (int b = 0; b <= j; ++b) {
          const double coeff = binomial(i, a) * binomial(j, b);
          const cplx scale = coeff * std::pow(Fz, i - a) * std::pow(Gc, j - b);
          v += scale * in.at(a, b);
          t += std::abs(scale) * in.tail(a, b);
        }
      out.at(i, j) = v;
      out.tails[out.slot(i, j)] = t;
    }
  return out;
}

}  // namespace

SeriesFamily convert_q_from_e(const SeriesFamily& e, cplx Fz, cplx Gz) { return convert(e, Fz, Gz); }

SeriesFamily convert_e_from_q(const SeriesFamily& q, cplx Fz, cplx Gz) { return convert(q, -Fz, -Gz); }

BlockMatrix pi_matrix(const EisensteinSystem& sys, int m, int n, const GroupElement& gamma) {
  require_order(sys, m, n);
  if (!sys.group().contains(gamma)) throw InvalidMatrix("element is not in the group");
  const std::size_t r = sys.group().cusps().size();
  BlockMatrix out(IndexSet(m, n), r);
  // S_{k,l}(gamma) for 0 <= k <= m, 0 <= l <= n.
  std::vector<cplx> S(static_cast<std::size_t>((m + 1) * (n + 1)));
  for (int k = 0; k <= m; ++k)
    for (int l = 0; l <= n; ++l) S[static_cast<std::size_t>(k * (n + 1) + l)] = s_cocycle(sys, k, l, gamma);
  for (std::size_t row = 0; row < out.index.size(); ++row) {
    const auto [i1, i2] = out.index[row];
    for (std::size_t col = 0; col < out.index.size(); ++col) {
      const auto [j1, j2] = out.index[col];
      if (j1 < i1 || j2 < i2) continue;
      const cplx v = binomial(m - i1, m - j1) * binomial(n - i2, n - j2) *
                     S[static_cast<std::size_t>((j1 - i1) * (n + 1) + (j2 - i2))];
      out.block(row, col) = v * Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
    }
  }
  return out;
}

EisVector assemble_vector(const EisensteinSystem& sys, int m, int n, const UpperHalfPoint& z, cplx s) {
  require_order(sys, m, n);
  const std::size_t r = sys.group().cusps().size();
  std::vector<SeriesFamily> families;
  for (std::size_t a = 0; a < r; ++a) families.push_back(eval_e_family(sys, a, m, n, z, s));
  return assemble_vector(families, m, n);
}

EisVector assemble_vector(std::span<const SeriesFamily> families, int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("orders must be nonnegative");
  for (const auto& fam : families)
    if (fam.m < m || fam.n < n) throw MissingIndex("family is smaller than the requested vector");
  const std::size_t r = families.size();
  IndexSet index(m, n);
  EisVector out{index, r, {}, {}};
  for (std::size_t k = 0; k < index.size(); ++k) {
    const auto [i1, i2] = index[k];
    for (std::size_t a = 0; a < r; ++a) {
      out.values.push_back(families[a].at(m - i1, n - i2));
      out.tails.push_back(families[a].tail(m - i1, n - i2));
    }
  }
  return out;
}

SeriesValue order_operator(const EisensteinSystem& sys, const SeriesRequest& req,
                           std::span<const GroupElement> gammas, const UpperHalfPoint& z, cplx s) {
  const std::size_t L = gammas.size();
  if (L == 0) throw std::invalid_argument("order operator needs at least one element");
  if (L > 16) throw std::invalid_argument("order operator supports at most 16 elements");
  for (const auto& g : gammas)
    if (!sys.group().contains(g)) throw InvalidMatrix("element is not in the group");
  // Expanding the nested differences gives
  //   sum over subsets S of (-1)^{L-|S|} chi(g_S) psi(g_S z),
  // where g_S multiplies the chosen elements in list order.
  CompensatedSum total;
  double tail = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << L); ++mask) {
    GroupElement g;
    int chosen = 0;
    for (std::size_t k = 0; k < L; ++k)
      if (mask & (std::size_t{1} << k)) {
        g = g * gammas[k];
        ++chosen;
      }
    const auto v = eval_e(sys, req, mobius(g, z), s);
    const double sign = ((L - static_cast<std::size_t>(chosen)) % 2 == 0) ? 1.0 : -1.0;
    total.add(sign * sys.chi(g) * v.value);
    tail += v.tail_estimate;
  }
  return {total.value(), tail, tail > sys.truncation().tail_target};
}

}  // namespace eisen
