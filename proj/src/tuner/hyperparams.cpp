#include "cdesign/hyperparams.hpp"

#include <charconv>
#include <cmath>

#include "cdesign/errors.hpp"

namespace cdesign {

namespace {

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, ptr) : std::to_string(x);
}

bool integral(double x) { return std::isfinite(x) && std::floor(x) == x; }

}  // namespace

void HyperparameterSpec::validate() const {
  if (name.empty()) throw ConfigError("hyperparameter needs a name");
  if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(default_value)) {
    throw ConfigError(name + ": bounds must be finite");
  }
  if (!(min <= default_value && default_value <= max)) {
    throw ConfigError(name + ": need min <= default <= max");
  }
  if (kind == ParamKind::Integer && !(integral(min) && integral(max) && integral(default_value))) {
    throw ConfigError(name + ": integer parameter needs integral min, max, default");
  }
}

HyperparameterSpec hyperparameter_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("hyperparameter spec must be an object");
  for (const char* key : {"name", "min", "max", "default"}) {
    if (!j.contains(key)) throw ConfigError(std::string("hyperparameter spec missing \"") + key + "\"");
  }
  if (!j["name"].is_string()) throw ConfigError("hyperparameter \"name\" must be a string");
  HyperparameterSpec s;
  s.name = j["name"].get<std::string>();
  for (const char* key : {"min", "max", "default"}) {
    if (!j[key].is_number()) throw ConfigError(s.name + ": \"" + key + "\" must be a number");
  }
  s.min = j["min"].get<double>();
  s.max = j["max"].get<double>();
  s.default_value = j["default"].get<double>();
  if (j.contains("kind")) {
    const auto kind = j["kind"].get<std::string>();
    if (kind == "integer") {
      s.kind = ParamKind::Integer;
    } else if (kind == "real") {
      s.kind = ParamKind::Real;
    } else {
      throw ConfigError(s.name + ": unknown kind '" + kind + "'");
    }
  } else {
    const bool ints = j["min"].is_number_integer() && j["max"].is_number_integer() &&
                      j["default"].is_number_integer();
    s.kind = ints ? ParamKind::Integer : ParamKind::Real;
  }
  s.validate();
  return s;
}

nlohmann::json to_json(const HyperparameterSpec& s) {
  nlohmann::json j;
  j["name"] = s.name;
  if (s.kind == ParamKind::Integer) {
    j["min"] = static_cast<long long>(s.min);
    j["max"] = static_cast<long long>(s.max);
    j["default"] = static_cast<long long>(s.default_value);
  } else {
    j["min"] = s.min;
    j["max"] = s.max;
    j["default"] = s.default_value;
  }
  return j;
}

std::optional<double> Assignment::find(std::string_view name) const {
  for (const auto& [n, v] : values_) {
    if (n == name) return v;
  }
  return std::nullopt;
}

double Assignment::get(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw ConfigError("assignment has no value for '" + std::string(name) + "'");
}

void Assignment::set(std::string_view name, double value) {
  for (auto& [n, v] : values_) {
    if (n == name) {
      v = value;
      return;
    }
  }
  values_.emplace_back(std::string(name), value);
}

std::string Assignment::to_string() const {
  std::string out;
  for (const auto& [n, v] : values_) {
    if (!out.empty()) out += ',';
    out += n + "=" + format_number(v);
  }
  return out;
}

bool Assignment::value_less(const Assignment& a, const Assignment& b) {
  const auto& x = a.values_;
  const auto& y = b.values_;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i].second != y[i].second) return x[i].second < y[i].second;
  }
  return x.size() < y.size();
}

void check_assignment(const std::vector<HyperparameterSpec>& specs, const Assignment& a) {
  if (a.values().size() != specs.size()) throw ConfigError("assignment does not cover the hyperparameters");
  for (const auto& s : specs) {
    const auto v = a.find(s.name);
    if (!v) throw ConfigError("missing hyperparameter '" + s.name + "'");
    if (!(*v >= s.min && *v <= s.max)) {
      throw ConfigError(s.name + "=" + format_number(*v) + " outside [" + format_number(s.min) + ", " +
                        format_number(s.max) + "]");
    }
    if (s.kind == ParamKind::Integer && !integral(*v)) throw ConfigError(s.name + " must be an integer");
  }
}

Assignment make_assignment(const std::vector<HyperparameterSpec>& specs, std::string_view overrides) {
  Assignment a;
  for (const auto& s : specs) a.set(s.name, s.default_value);
  std::string_view rest = overrides;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected name=value, got '" + std::string(item) + "'");
    const std::string_view name = item.substr(0, eq);
    const std::string_view text = item.substr(eq + 1);
    if (!a.find(name)) throw ConfigError("unknown hyperparameter '" + std::string(name) + "'");
    double value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw ConfigError("hyperparameter " + std::string(name) + ": '" + std::string(text) + "' is not a number");
    }
    a.set(name, value);
  }
  check_assignment(specs, a);
  return a;
}

nlohmann::ordered_json to_json(const Assignment& a) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [n, v] : a.values()) j[n] = v;
  return j;
}

}  // namespace cdesign
