#include <json.hpp>

#include "eisen/arithgroup.hpp"
#include "eisen/errors.hpp"
#include "eisen/modform.hpp"

namespace eisen {

namespace {

using nlohmann::json;

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

std::int64_t positive_level(const json& j) {
  if (!j.contains("level") || !j["level"].is_number_integer()) throw ConfigError("\"level\" must be an integer");
  const auto level = j["level"].get<std::int64_t>();
  if (level < 1) throw ConfigError("\"level\" must be positive");
  return level;
}

}  // namespace

Gamma0 group_from_json(std::string_view text) {
  const json j = parse(text);
  if (!j.is_object()) throw ConfigError("group config must be an object");
  const auto level = positive_level(j);
  if (!j.contains("cusp_order")) return Gamma0(level);
  if (!j["cusp_order"].is_array()) throw ConfigError("\"cusp_order\" must be an array of labels");
  std::vector<std::string> order;
  for (const auto& label : j["cusp_order"]) {
    if (!label.is_string()) throw ConfigError("cusp labels must be strings");
    order.push_back(label.get<std::string>());
  }
  try {
    return Gamma0(level, order);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

CuspForm form_from_json(std::string_view text) {
  const json j = parse(text);
  if (!j.is_object()) throw ConfigError("form config must be an object");
  const auto level = positive_level(j);
  if (j.value("eta_product", false)) {
    const auto terms = j.value("terms", std::int64_t{400});
    if (terms < 1) throw ConfigError("\"terms\" must be positive");
    try {
      return eta_product_expansion(level, static_cast<std::size_t>(terms));
    } catch (const UnsupportedForm& e) {
      throw ConfigError(e.what());
    }
  }
  if (!j.contains("coefficients") || !j["coefficients"].is_array())
    throw ConfigError("form needs \"coefficients\" or \"eta_product\": true");
  std::vector<cplx> coefficients;
  for (const auto& c : j["coefficients"]) {
    if (c.is_number()) {
      coefficients.emplace_back(c.get<double>(), 0.0);
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      coefficients.emplace_back(c[0].get<double>(), c[1].get<double>());
    } else {
      throw ConfigError("coefficients must be numbers or [re, im] pairs");
    }
  }
  if (coefficients.empty()) throw ConfigError("coefficient list is empty");
  return CuspForm(level, std::move(coefficients), FormSource::ExplicitList, j.value("label", std::string("explicit")));
}

}  // namespace eisen
