#include <algorithm>

#include "cdesign/errors.hpp"
#include "cdesign/harness.hpp"
#include "cdesign/heuristics.hpp"

namespace cdesign {

bool Algorithm::supports(Family f) const {
  return std::find(families.begin(), families.end(), f) != families.end();
}

namespace {

HyperparameterSpec real(std::string name, double min, double max, double def) {
  return {std::move(name), ParamKind::Real, min, max, def};
}

HyperparameterSpec integer(std::string name, double min, double max, double def) {
  return {std::move(name), ParamKind::Integer, min, max, def};
}

std::vector<Algorithm> make_registry() {
  const std::vector<Family> annealable = {Family::EPA, Family::PA, Family::SymmW, Family::SkewW};
  std::vector<Algorithm> out;

  out.push_back({"sa-const", annealable, {real("T", 0.01, 2.0, 0.5)},
                 [](const InstanceSpec& s, std::uint64_t seed, const Budget& b, const Assignment& a) {
                   return sa_constant_temperature(s, seed, b, a.get("T"));
                 }});

  out.push_back({"sa-reset",
                 annealable,
                 {real("T0", 0.01, 2.0, 0.5), real("cooling_rate", 0.5, 1.0, 0.999),
                  integer("reset_period", 100, 1000000, 10000)},
                 [](const InstanceSpec& s, std::uint64_t seed, const Budget& b, const Assignment& a) {
                   ResetSchedule schedule;
                   schedule.initial_temperature = a.get("T0");
                   schedule.cooling_rate = a.get("cooling_rate");
                   schedule.reset_period = static_cast<std::uint64_t>(a.get("reset_period"));
                   return sa_with_resets(s, seed, b, schedule);
                 }});

  out.push_back({"local-search", {Family::EPA}, {},
                 [](const InstanceSpec& s, std::uint64_t seed, const Budget& b, const Assignment&) {
                   return local_search_epa(s, seed, b);
                 }});

  out.push_back({"ga",
                 {Family::BTD},
                 {integer("population", 2, 200, 100), real("mutation_rate", 0.01, 1.0, 0.2),
                  integer("tournament_size", 1, 10, 3)},
                 [](const InstanceSpec& s, std::uint64_t seed, const Budget& b, const Assignment& a) {
                   GaParams p;
                   p.population = static_cast<int>(a.get("population"));
                   p.mutation_rate = a.get("mutation_rate");
                   p.tournament_size = static_cast<int>(a.get("tournament_size"));
                   return ga_btd(s, seed, b, p);
                 }});

  out.push_back({"dfs", {Family::FR}, {},
                 [](const InstanceSpec& s, std::uint64_t seed, const Budget& b, const Assignment&) {
                   return dfs_florentine(s, seed, b);
                 }});
  return out;
}

}  // namespace

const std::vector<Algorithm>& builtin_algorithms() {
  static const std::vector<Algorithm> registry = make_registry();
  return registry;
}

const Algorithm& find_algorithm(std::string_view name) {
  for (const auto& a : builtin_algorithms()) {
    if (a.name == name) return a;
  }
  std::string known;
  for (const auto& a : builtin_algorithms()) known += (known.empty() ? "" : ", ") + a.name;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace cdesign
