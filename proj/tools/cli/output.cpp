#include "output.hpp"

#include <cstdio>
#include <sstream>

namespace eisen::cli {

namespace {

// Shortest text that reads back to the same double.
std::string num(double v) {
  char buf[32];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

Json pair_json(cplx v) { return Json::array({v.real(), v.imag()}); }

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string header_line(const RunConfig& cfg) { return "# config_hash=" + config_hash(cfg.resolved) + "\n"; }

Json envelope(const RunConfig& cfg) {
  Json out;
  out["config_hash"] = config_hash(cfg.resolved);
  out["config"] = cfg.resolved;
  return out;
}

const char* relation_text(verify::Relation r) {
  switch (r) {
    case verify::Relation::AtMost: return "<=";
    case verify::Relation::AtLeast: return ">=";
    case verify::Relation::Equal: return "==";
  }
  return "?";
}

}  // namespace

std::string render_evaluate(const RunConfig& cfg, const std::vector<EvalRecord>& records, Format format) {
  const Gamma0& group = cfg.system->group();
  if (format == Format::Csv) {
    std::ostringstream os;
    os << header_line(cfg) << "m,n,cusp,x,y,re_s,im_s,re_value,im_value,tail_estimate\n";
    for (const auto& r : records) {
      const auto& q = r.request;
      os << q.m << ',' << q.n << ',' << csv_field(group.cusp(q.cusp).label) << ',' << num(q.z.x()) << ','
         << num(q.z.y()) << ',' << num(q.s.real()) << ',' << num(q.s.imag()) << ',' << num(r.value.value.real()) << ','
         << num(r.value.value.imag()) << ',' << num(r.value.tail_estimate) << '\n';
    }
    return os.str();
  }
  Json out = envelope(cfg);
  out["records"] = Json::array();
  for (const auto& r : records) {
    const auto& q = r.request;
    out["records"].push_back({{"m", q.m},
                              {"n", q.n},
                              {"cusp", group.cusp(q.cusp).label},
                              {"z", Json::array({q.z.x(), q.z.y()})},
                              {"s", pair_json(q.s)},
                              {"value", pair_json(r.value.value)},
                              {"tail_estimate", r.value.tail_estimate}});
  }
  return out.dump(2) + "\n";
}

std::string render_fourier(const RunConfig& cfg, const FourierLine& line, std::optional<double> residual,
                           Format format) {
  const auto& req = *cfg.fourier;
  const Gamma0& group = cfg.system->group();
  const std::string a = group.cusp(line.cusp_a).label, b = group.cusp(line.cusp_b).label;
  // k = 0 carries the y^{1-s} coefficient; the final row carries the y^s one.
  struct Row {
    std::string k;
    cplx value;
    double tail;
  };
  std::vector<Row> rows;
  for (std::int64_t k = req.k_min; k <= req.k_max; ++k) {
    if (k == 0)
      rows.push_back({"0", line.constant.c_1ms, line.constant.tail_estimate});
    else
      rows.push_back({std::to_string(k), line.coefficients.at(k).value, line.coefficients.at(k).tail_estimate});
  }
  rows.push_back({"const", line.constant.c_s, line.constant.tail_estimate});

  if (format == Format::Csv) {
    std::ostringstream os;
    os << header_line(cfg) << "m,n,a,b,k,re_s,im_s,re_phi,im_phi,tail_estimate";
    if (residual) os << ",residual";
    os << '\n';
    for (const auto& r : rows) {
      os << line.m << ',' << line.n << ',' << csv_field(a) << ',' << csv_field(b) << ',' << r.k << ','
         << num(line.s.real()) << ',' << num(line.s.imag()) << ',' << num(r.value.real()) << ','
         << num(r.value.imag()) << ',' << num(r.tail);
      if (residual) os << ',' << num(*residual);
      os << '\n';
    }
    return os.str();
  }
  Json out = envelope(cfg);
  Json l;
  l["cusp_a"] = a;
  l["cusp_b"] = b;
  l["m"] = line.m;
  l["n"] = line.n;
  l["s"] = pair_json(line.s);
  l["y"] = line.y;
  l["coefficients"] = Json::array();
  for (const auto& [k, c] : line.coefficients)
    if (k >= req.k_min && k <= req.k_max)
      l["coefficients"].push_back({{"k", k}, {"value", pair_json(c.value)}, {"tail_estimate", c.tail_estimate}});
  l["constant"] = {{"c_s", pair_json(line.constant.c_s)},
                   {"c_1ms", pair_json(line.constant.c_1ms)},
                   {"tail_estimate", line.constant.tail_estimate},
                   {"delta_ok", line.constant.delta_ok}};
  l["tolerance"] = line.tolerance;
  if (residual) l["expansion_residual"] = *residual;
  out["line"] = l;
  return out.dump(2) + "\n";
}

std::string render_verify(const RunConfig& cfg, const std::vector<verify::SuiteResult>& suites, Format format) {
  bool all = true;
  for (const auto& s : suites) all = all && s.pass();
  if (format == Format::Csv) {
    std::ostringstream os;
    os << header_line(cfg) << "suite,check,pass,measured,relation,limit,note\n";
    for (const auto& s : suites)
      for (const auto& c : s.checks)
        os << s.suite << ',' << csv_field(c.name) << ',' << (c.pass ? "true" : "false") << ',' << num(c.measured)
           << ',' << relation_text(c.relation) << ',' << num(c.limit) << ',' << csv_field(c.note) << '\n';
    return os.str();
  }
  Json out = envelope(cfg);
  out["pass"] = all;
  out["suites"] = Json::array();
  for (const auto& s : suites) {
    Json js{{"suite", s.suite}, {"pass", s.pass()}, {"checks", Json::array()}};
    for (const auto& c : s.checks)
      js["checks"].push_back({{"name", c.name},
                              {"pass", c.pass},
                              {"measured", c.measured},
                              {"relation", relation_text(c.relation)},
                              {"limit", c.limit},
                              {"note", c.note}});
    out["suites"].push_back(js);
  }
  return out.dump(2) + "\n";
}

}  // namespace eisen::cli
