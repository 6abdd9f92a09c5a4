#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace cdesign {

enum class ParamKind { Real, Integer };

/// A tunable parameter with its range and default.
struct HyperparameterSpec {
  std::string name;
  ParamKind kind = ParamKind::Real;
  double min = 0;
  double max = 0;
  double default_value = 0;

  /// Throws ConfigError unless min <= default <= max (and integral bounds
  /// for integer kinds).
  void validate() const;

  friend bool operator==(const HyperparameterSpec&, const HyperparameterSpec&) = default;
};

/// {"name":"gamma","min":0.0,"max":2.0,"default":0.5}. An optional "kind"
/// ("real" | "integer") wins; otherwise the parameter is an integer iff
/// min, max, and default are all JSON integers.
HyperparameterSpec hyperparameter_from_json(const nlohmann::json& j);
nlohmann::json to_json(const HyperparameterSpec& spec);

/// Concrete values for a list of hyperparameters, in the list's order.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<std::pair<std::string, double>> values) : values_(std::move(values)) {}

  /// Throws ConfigError if `name` is absent.
  double get(std::string_view name) const;
  std::optional<double> find(std::string_view name) const;
  void set(std::string_view name, double value);

  const std::vector<std::pair<std::string, double>>& values() const noexcept { return values_; }
  bool empty() const noexcept { return values_.empty(); }

  /// "T=0.5,cooling_rate=1"
  std::string to_string() const;

  /// Ordered by values only, position by position.
  static bool value_less(const Assignment& a, const Assignment& b);

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::pair<std::string, double>> values_;
};

/// Defaults for every spec, overridden by `overrides` ("name=value,...").
/// Throws ConfigError on unknown names, out-of-range values, or
/// non-integral values for integer parameters.
Assignment make_assignment(const std::vector<HyperparameterSpec>& specs, std::string_view overrides = {});

/// Throws ConfigError unless `a` covers exactly `specs` with in-range values.
void check_assignment(const std::vector<HyperparameterSpec>& specs, const Assignment& a);

nlohmann::ordered_json to_json(const Assignment& a);

}  // namespace cdesign
