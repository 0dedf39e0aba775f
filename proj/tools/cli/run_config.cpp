#include "run_config.hpp"

#include <cstdio>

#include "eisen/errors.hpp"

namespace eisen::cli {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

const Json& member(const Json& j, const char* key, const char* where) {
  if (!j.contains(key)) fail(std::string(where) + " needs \"" + key + "\"");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  return j.get<double>();
}

int order(const Json& j, const char* key) {
  const Json& v = j.contains(key) ? j.at(key) : Json(0);
  if (!v.is_number_integer() || v.get<int>() < 0) fail(std::string("\"") + key + "\" must be a nonnegative integer");
  return v.get<int>();
}

// [x, y] with y > 0
UpperHalfPoint point(const Json& j) {
  if (!j.is_array() || j.size() != 2) fail("points are [x, y] pairs");
  const double x = number(j[0], "x"), y = number(j[1], "y");
  if (!(y > 0.0)) fail("points need y > 0");
  return {x, y};
}

// [sigma, t] or a bare real number
cplx spectral(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) fail("s is a number or a [sigma, t] pair");
  return {number(j[0], "sigma"), number(j[1], "t")};
}

Json point_json(const UpperHalfPoint& z) { return Json::array({z.x(), z.y()}); }
Json spectral_json(cplx s) { return Json::array({s.real(), s.imag()}); }

std::size_t cusp_of(const Gamma0& group, const Json& j) {
  if (j.is_number_integer()) {
    const auto i = j.get<std::int64_t>();
    if (i < 0 || static_cast<std::size_t>(i) >= group.cusps().size()) fail("cusp index out of range");
    return static_cast<std::size_t>(i);
  }
  if (!j.is_string()) fail("cusps are labels or indices");
  return group.cusp_index(j.get<std::string>());
}

CharacterSpec character_of(const Json& j, Json& resolved) {
  const std::string kind = j.value("kind", std::string("trivial"));
  resolved = {{"kind", kind}};
  if (kind == "trivial") return CharacterSpec::trivial();
  if (kind == "dirichlet_prime") {
    const auto p = member(j, "p", "character").get<std::int64_t>();
    const auto idx = member(j, "j", "character").get<std::int64_t>();
    resolved["p"] = p;
    resolved["j"] = idx;
    return CharacterSpec::dirichlet_prime(p, idx);
  }
  if (kind == "dirichlet") {
    const auto modulus = member(j, "modulus", "character").get<std::int64_t>();
    std::vector<cplx> values;
    for (const auto& v : member(j, "values", "character")) values.push_back(spectral(v));
    resolved["modulus"] = modulus;
    resolved["values"] = Json::array();
    for (const auto& v : values) resolved["values"].push_back(spectral_json(v));
    return CharacterSpec::dirichlet(modulus, std::move(values));
  }
  fail("unknown character kind " + kind);
}

RunConfig load(const std::string& text, Command command, const Overrides& overrides) {
  Json doc;
  try {
    doc = text.empty() ? Json::object() : Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("config must be a JSON object");

  RunConfig cfg;
  Json& res = cfg.resolved;
  res["command"] = command == Command::Evaluate ? "evaluate" : command == Command::Fourier ? "fourier" : "verify";

  const Json trunc = doc.value("truncation", Json::object());
  double c_max = trunc.contains("c_max") ? number(trunc.at("c_max"), "c_max") : 1000.0;
  double tail_target = trunc.contains("tail_target") ? number(trunc.at("tail_target"), "tail_target") : 1e-8;
  if (overrides.tail_target) tail_target = *overrides.tail_target;
  if (!(tail_target > 0.0)) fail("tail_target must be positive");
  cfg.tail_target = tail_target;

  if (command == Command::Verify) {
    const Json v = doc.value("verify", Json::object());
    cfg.seed = v.contains("seed") ? v.at("seed").get<std::uint64_t>() : 0;
    if (overrides.seed) cfg.seed = *overrides.seed;
    res["seed"] = cfg.seed;
    // Suites pick their own truncations unless a target was requested.
    res["tail_target"] = (overrides.tail_target || trunc.contains("tail_target")) ? Json(tail_target) : Json(nullptr);
    if (res["tail_target"].is_null()) cfg.tail_target = 0.0;
    return cfg;
  }

  const Json& group_doc = member(doc, "group", "config");
  Gamma0 group = group_from_json(group_doc.dump());
  res["group"] = {{"level", group.level()}, {"cusp_order", Json::array()}};
  for (const auto& c : group.cusps()) res["group"]["cusp_order"].push_back(c.label);

  std::shared_ptr<const CuspForm> f, g;
  if (doc.contains("forms")) {
    const Json& forms = doc.at("forms");
    f = std::make_shared<const CuspForm>(form_from_json(member(forms, "f", "forms").dump()));
    g = forms.contains("g") ? std::make_shared<const CuspForm>(form_from_json(forms.at("g").dump())) : f;
    if (f->level() != group.level() || g->level() != group.level()) fail("form level must match the group level");
    auto describe = [](const CuspForm& form) {
      return Json{{"label", form.label()}, {"level", form.level()}, {"terms", form.terms()}};
    };
    res["forms"] = {{"f", describe(*f)}, {"g", describe(*g)}};
  }
  Json chi_resolved;
  CharacterSpec chi = character_of(doc.value("character", Json::object()), chi_resolved);
  res["character"] = chi_resolved;
  res["truncation"] = {{"c_max", c_max}, {"tail_target", tail_target}};

  TruncationPolicy policy;
  try {
    policy = TruncationPolicy(c_max, tail_target);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (f)
    cfg.system = std::make_shared<const EisensteinSystem>(std::move(group), f, g, chi, policy);
  else if (chi.is_trivial())
    cfg.system = std::make_shared<const EisensteinSystem>(std::move(group), policy);
  else
    fail("a nontrivial character needs forms");
  const Gamma0& grp = cfg.system->group();

  if (command == Command::Evaluate) {
    const Json& ev = member(doc, "evaluate", "config");
    Json records = Json::array();
    auto add = [&](int m, int n, std::size_t cusp, UpperHalfPoint z, cplx s) {
      cfg.requests.push_back({m, n, cusp, z, s});
      records.push_back({{"m", m}, {"n", n}, {"cusp", grp.cusp(cusp).label}, {"z", point_json(z)},
                         {"s", spectral_json(s)}});
    };
    if (ev.contains("requests"))
      for (const auto& r : ev.at("requests"))
        add(order(r, "m"), order(r, "n"), cusp_of(grp, r.value("cusp", Json("inf"))), point(member(r, "z", "request")),
            spectral(member(r, "s", "request")));
    if (ev.contains("grid")) {
      const Json& gr = ev.at("grid");
      const int m = order(gr, "m"), n = order(gr, "n");
      const std::size_t cusp = cusp_of(grp, gr.value("cusp", Json("inf")));
      for (const auto& z : member(gr, "points", "grid"))
        for (const auto& s : member(gr, "s", "grid")) add(m, n, cusp, point(z), spectral(s));
    }
    if (cfg.requests.empty()) fail("evaluate needs \"requests\" or \"grid\"");
    res["evaluate"] = {{"requests", records}};
  } else {
    const Json& fo = member(doc, "fourier", "config");
    FourierRequest req;
    req.m = order(fo, "m");
    req.n = order(fo, "n");
    req.a = cusp_of(grp, fo.value("a", Json("inf")));
    req.b = cusp_of(grp, fo.value("b", Json("inf")));
    req.s = spectral(member(fo, "s", "fourier"));
    req.k_min = fo.value("k_min", std::int64_t{-5});
    req.k_max = fo.value("k_max", std::int64_t{5});
    if (req.k_min > req.k_max) fail("k_min exceeds k_max");
    if (fo.contains("constant_heights")) {
      const Json& h = fo.at("constant_heights");
      if (!h.is_array() || h.size() != 2) fail("constant_heights is a pair");
      req.constant_heights = {number(h[0], "height"), number(h[1], "height")};
    }
    req.verify_expansion = fo.value("verify_expansion", false);
    if (fo.contains("verify_points"))
      for (const auto& z : fo.at("verify_points")) req.verify_points.push_back(point(z));
    else if (req.verify_expansion)
      req.verify_points = {UpperHalfPoint(0.1, 0.9), UpperHalfPoint(-0.3, 1.2), UpperHalfPoint(0.45, 1.6)};
    Json pts = Json::array();
    for (const auto& z : req.verify_points) pts.push_back(point_json(z));
    res["fourier"] = {{"m", req.m},
                      {"n", req.n},
                      {"a", grp.cusp(req.a).label},
                      {"b", grp.cusp(req.b).label},
                      {"s", spectral_json(req.s)},
                      {"k_min", req.k_min},
                      {"k_max", req.k_max},
                      {"constant_heights", Json::array({req.constant_heights.first, req.constant_heights.second})},
                      {"verify_expansion", req.verify_expansion},
                      {"verify_points", pts}};
    cfg.fourier = req;
  }
  return cfg;
}

}  // namespace

RunConfig load_config(const std::string& text, Command command, const Overrides& overrides) {
  try {
    return load(text, command, overrides);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("config has the wrong shape: ") + e.what());
  }
}

std::string config_hash(const Json& resolved) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : resolved.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace eisen::cli
