#include <algorithm>
#include <cctype>
#include <charconv>
#include <climits>
#include <sstream>

#include "cdesign/designs.hpp"

namespace cdesign {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool may_be_zero(Family f, std::string_view name) {
  if (f == Family::EPA) return name == "d";
  if (f == Family::BTD) return name == "p1" || name == "p2";
  return false;
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::PA: return "PA";
    case Family::SymmW: return "SymmW";
    case Family::SkewW: return "SkewW";
    case Family::BTD: return "BTD";
    case Family::FR: return "FR";
    case Family::EPA: return "EPA";
  }
  return "?";
}

Family parse_family(std::string_view tag) {
  const std::string t = lower(trim(tag));
  for (Family f : kAllFamilies) {
    if (lower(to_string(f)) == t) return f;
  }
  throw SpecError("unknown design family '" + std::string(tag) + "'");
}

const std::vector<std::string>& parameter_names(Family f) {
  static const std::vector<std::string> pa{"N", "k", "v"};
  static const std::vector<std::string> weighing{"n", "w"};
  static const std::vector<std::string> btd{"V", "B", "p1", "p2", "R", "K", "L"};
  static const std::vector<std::string> fr{"r", "n"};
  static const std::vector<std::string> epa{"n", "d", "m"};
  switch (f) {
    case Family::PA: return pa;
    case Family::SymmW:
    case Family::SkewW: return weighing;
    case Family::BTD: return btd;
    case Family::FR: return fr;
    case Family::EPA: return epa;
  }
  return pa;
}

InstanceSpec InstanceSpec::make(Family family, std::vector<Param> params) {
  const auto& names = parameter_names(family);
  std::vector<Param> ordered;
  ordered.reserve(names.size());
  for (const auto& name : names) {
    const auto count = std::count_if(params.begin(), params.end(),
                                      [&](const Param& p) { return p.name == name; });
    if (count == 0) {
      throw SpecError(std::string(to_string(family)) + ": missing parameter '" + name + "'");
    }
    if (count > 1) {
      throw SpecError(std::string(to_string(family)) + ": parameter '" + name + "' given twice");
    }
    const auto it = std::find_if(params.begin(), params.end(),
                                 [&](const Param& p) { return p.name == name; });
    const long long floor = may_be_zero(family, name) ? 0 : 1;
    if (it->value < floor || it->value > INT_MAX) {
      throw SpecError(std::string(to_string(family)) + ": parameter " + name + "=" +
                      std::to_string(it->value) + " out of range (must be >= " +
                      std::to_string(floor) + ")");
    }
    ordered.push_back(*it);
  }
  if (params.size() != names.size()) {
    for (const auto& p : params) {
      if (std::find(names.begin(), names.end(), p.name) == names.end()) {
        throw SpecError(std::string(to_string(family)) + ": unknown parameter '" + p.name + "'");
      }
    }
  }

  InstanceSpec spec(family, std::move(ordered));
  auto v = [&](const char* n) { return static_cast<long long>(spec.get(n)); };
  switch (family) {
    case Family::SymmW:
    case Family::SkewW:
      if (v("w") > v("n")) throw SpecError("weighing matrix: w must not exceed n");
      break;
    case Family::FR:
      if (v("r") > v("n")) throw SpecError("FR: r must not exceed n");
      break;
    case Family::EPA:
      if (v("d") > v("n")) throw SpecError("EPA: d must not exceed n");
      break;
    case Family::BTD:
      if (v("R") != v("p1") + 2 * v("p2")) throw SpecError("BTD: R must equal p1 + 2*p2");
      if (v("V") * v("R") != v("B") * v("K")) throw SpecError("BTD: V*R must equal B*K");
      if (v("p1") + v("p2") > v("B")) throw SpecError("BTD: p1 + p2 must not exceed B");
      break;
    case Family::PA: break;
  }
  return spec;
}

InstanceSpec InstanceSpec::parse(Family family, std::string_view assignments) {
  std::vector<Param> params;
  std::string_view rest = assignments;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw SpecError("expected name=value, got '" + std::string(item) + "'");
    }
    const std::string_view name = trim(item.substr(0, eq));
    const std::string_view value = trim(item.substr(eq + 1));
    long long parsed = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
      throw SpecError("parameter " + std::string(name) + ": '" + std::string(value) +
                      "' is not an integer");
    }
    params.push_back({std::string(name), parsed});
  }
  return make(family, std::move(params));
}

int InstanceSpec::get(std::string_view name) const {
  for (const auto& p : params_) {
    if (p.name == name) return static_cast<int>(p.value);
  }
  throw SpecError(std::string(to_string(family_)) + " has no parameter '" + std::string(name) + "'");
}

int InstanceSpec::rows() const {
  switch (family_) {
    case Family::PA: return get("N");
    case Family::SymmW:
    case Family::SkewW: return get("n");
    case Family::BTD: return get("V");
    case Family::FR: return get("r");
    case Family::EPA: return get("m");
  }
  return 0;
}

int InstanceSpec::cols() const {
  switch (family_) {
    case Family::PA: return get("k");
    case Family::SymmW:
    case Family::SkewW: return get("n");
    case Family::BTD: return get("B");
    case Family::FR: return get("n");
    case Family::EPA: return get("n");
  }
  return 0;
}

std::string InstanceSpec::label() const {
  std::ostringstream os;
  os << to_string(family_) << '(';
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (i) os << ',';
    os << params_[i].name << '=' << params_[i].value;
  }
  os << ')';
  return os.str();
}

}  // namespace cdesign
