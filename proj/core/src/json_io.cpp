#include "chebconvex/json_io.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "chebconvex/errors.hpp"

namespace chebconvex {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) raise(ErrorCode::BadSpec, std::string("malformed JSON in ") + what);
  return j;
}

double bound_from(const json& j, double fallback, const char* what) {
  if (j.is_null()) return fallback;
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  raise(ErrorCode::BadSpec, std::string("domain bound must be a number or \"inf\"/\"-inf\": ") + what);
}

Domain domain_from(const json& j) {
  const double lo = bound_from(j.contains("lo") ? j["lo"] : json(), -std::numeric_limits<double>::infinity(), "lo");
  const double hi = bound_from(j.contains("hi") ? j["hi"] : json(), std::numeric_limits<double>::infinity(), "hi");
  const bool open_lo = j.value("open_lo", false);
  const bool open_hi = j.value("open_hi", false);
  return Domain::interval(lo, hi, open_lo, open_hi);
}

std::vector<double> numbers_from(const json& j, const char* what) {
  if (!j.is_array()) raise(ErrorCode::BadSpec, std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) raise(ErrorCode::BadSpec, std::string(what) + " must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

ChebSystem parse_system_spec(const std::string& json_text) {
  const json j = parse_json(json_text, "system spec");
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    raise(ErrorCode::BadSpec, "system spec needs a string \"kind\"");
  const std::string kind = j["kind"].get<std::string>();

  if (kind == "table") {
    if (!j.contains("table") || !j["table"].is_object())
      raise(ErrorCode::BadSpec, "tabulated system spec needs a \"table\" object");
    const json& t = j["table"];
    std::vector<double> points = numbers_from(t.contains("points") ? t["points"] : json(), "table.points");
    if (!t.contains("values") || !t["values"].is_array())
      raise(ErrorCode::BadSpec, "table.values must be an array of rows");
    std::vector<std::vector<double>> values;
    for (const auto& row : t["values"]) values.push_back(numbers_from(row, "table.values row"));
    return ChebSystem::tabulated(std::move(points), std::move(values));
  }

  const int n = j.value("n", -1);
  std::ostringstream tag;
  tag << kind;
  if (n >= 0) tag << ":" << n;
  if (j.contains("domain")) {
    if (!j["domain"].is_object()) raise(ErrorCode::BadSpec, "domain must be an object");
    return builtin_system(tag.str(), domain_from(j["domain"]));
  }
  return builtin_system(tag.str());
}

SampledFunction parse_function_spec(const std::string& json_text) {
  const json j = parse_json(json_text, "function spec");
  if (!j.is_object() || !j.contains("source") || !j["source"].is_string())
    raise(ErrorCode::BadSpec, "function spec needs a string \"source\"");
  const std::string source = j["source"].get<std::string>();

  if (source == "table") {
    std::vector<double> points = numbers_from(j.contains("points") ? j["points"] : json(), "points");
    std::vector<double> values = numbers_from(j.contains("values") ? j["values"] : json(), "values");
    return SampledFunction::table(std::move(points), std::move(values));
  }
  if (source != "builtin") raise(ErrorCode::BadSpec, "function source must be \"table\" or \"builtin\"");

  if (!j.contains("name") || !j["name"].is_string())
    raise(ErrorCode::BadSpec, "builtin function spec needs a string \"name\"");
  const std::string name = j["name"].get<std::string>();
  std::vector<double> params;
  if (j.contains("params")) params = numbers_from(j["params"], "params");

  if (name == "poly") return SampledFunction::poly(std::move(params));
  if (name == "abs") return SampledFunction::abs_shift(params.empty() ? 0.0 : params[0]);
  if (name == "exp") return SampledFunction::exp_scale(params.empty() ? 1.0 : params[0]);
  if (name == "sin")
    return SampledFunction::sin_wave(params.empty() ? 1.0 : params[0], params.size() > 1 ? params[1] : 0.0);
  raise(ErrorCode::BadSpec, "unknown builtin function '" + name + "'");
}

SampledFunction parse_function_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) raise(ErrorCode::BadSpec, "empty CSV table");
  // Tolerate a UTF-8 BOM and trailing carriage return.
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,f") raise(ErrorCode::BadSpec, "CSV table must start with the header \"x,f\"");

  std::vector<double> points;
  std::vector<double> values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      raise(ErrorCode::BadSpec, "CSV row " + std::to_string(lineno) + " is not \"x,f\"");
    try {
      std::size_t used = 0;
      const double x = std::stod(line.substr(0, comma), &used);
      const double f = std::stod(line.substr(comma + 1), &used);
      points.push_back(x);
      values.push_back(f);
    } catch (const std::exception&) {
      raise(ErrorCode::BadSpec, "CSV row " + std::to_string(lineno) + " has a malformed number");
    }
  }
  return SampledFunction::table(std::move(points), std::move(values));
}

}  // namespace chebconvex
