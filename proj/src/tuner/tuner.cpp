#include "cdesign/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "cdesign/errors.hpp"

namespace cdesign {

std::string status_label(const RunRecord& r) {
  switch (r.status) {
    case RunStatus::Solved: return r.verified ? "solved" : "rejected";
    case RunStatus::Timeout: return "timeout";
    case RunStatus::Infeasible: return "infeasible";
    case RunStatus::Error: return "error";
  }
  return "error";
}

double scoring(std::span<const RunRecord> records, double maxtime) {
  if (!(maxtime > 0)) throw ConfigError("scoring needs a positive maxtime");
  if (records.empty()) return 0;
  const double n = static_cast<double>(records.size());
  double score = 0;
  for (const auto& r : records) {
    if (!r.verified) continue;
    const double elapsed = std::clamp(r.elapsed_s, 0.0, maxtime);
    score += 1.0 + (maxtime - elapsed) / (maxtime * n);
  }
  return score;
}

std::vector<double> one_grid(double min, double max, int points, ParamKind kind) {
  if (points < 1) throw ConfigError("one_grid needs at least one point");
  if (!(min <= max)) throw ConfigError("one_grid needs min <= max");

  std::vector<double> values;
  if (min == max || points == 1) {
    values.push_back(min);
  } else {
    const double range = max - min;
    const int ends = std::max(1, points / 4);
    values.push_back(min);
    values.push_back(max);
    for (int i = 1; i < ends; ++i) {
      const double offset = range * std::pow(10.0, -(ends - i));
      values.push_back(min + offset);
      values.push_back(max - offset);
    }
    const int interior = points - 2 * ends;
    for (int j = 1; j <= interior; ++j) values.push_back(min + range * j / (interior + 1));
  }
  if (kind == ParamKind::Integer) {
    for (auto& v : values) v = std::round(v);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

namespace {

std::vector<double> corner_values(const HyperparameterSpec& s) {
  std::vector<double> out;
  for (double v : {s.min, s.max, s.default_value}) {
    if (s.kind == ParamKind::Integer) v = std::round(v);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

// Cross product with the first axis outermost.
void cross(const std::vector<std::vector<double>>& axes, std::vector<std::vector<double>>& out) {
  std::vector<std::size_t> at(axes.size(), 0);
  if (std::any_of(axes.begin(), axes.end(), [](const auto& a) { return a.empty(); })) return;
  for (;;) {
    std::vector<double> point(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i) point[i] = axes[i][at[i]];
    out.push_back(std::move(point));
    std::size_t k = axes.size();
    while (k > 0) {
      --k;
      if (++at[k] < axes[k].size()) break;
      at[k] = 0;
      if (k == 0) return;
    }
    if (axes.empty()) return;
  }
}

}  // namespace

std::vector<Assignment> hyperparm_grid(const std::vector<HyperparameterSpec>& specs, int gridsize) {
  if (gridsize < 1) throw ConfigError("gridsize must be at least 1");
  for (const auto& s : specs) s.validate();
  const std::size_t H = specs.size();
  if (H == 0) return {Assignment{}};

  const double share = static_cast<double>(gridsize) / static_cast<double>(H + 1);

  std::vector<std::vector<double>> candidates;
  for (std::size_t i = 0; i < H; ++i) {
    double others = 1;
    std::vector<std::vector<double>> axes(H);
    for (std::size_t j = 0; j < H; ++j) {
      if (j == i) continue;
      axes[j] = corner_values(specs[j]);
      others *= static_cast<double>(axes[j].size());
    }
    const int points = std::max(1, static_cast<int>(std::floor(share / others + 1e-9)));
    axes[i] = one_grid(specs[i].min, specs[i].max, points, specs[i].kind);
    cross(axes, candidates);
  }

  const int per_axis =
      std::max(2, static_cast<int>(std::floor(std::pow(share, 1.0 / static_cast<double>(H)) + 1e-9)));
  std::vector<std::vector<double>> balanced_axes;
  for (const auto& s : specs) balanced_axes.push_back(one_grid(s.min, s.max, per_axis, s.kind));
  cross(balanced_axes, candidates);

  std::vector<Assignment> grid;
  std::set<std::vector<double>> seen;
  for (const auto& point : candidates) {
    if (grid.size() >= static_cast<std::size_t>(gridsize)) break;
    if (!seen.insert(point).second) continue;
    std::vector<std::pair<std::string, double>> values;
    for (std::size_t i = 0; i < H; ++i) values.emplace_back(specs[i].name, point[i]);
    grid.emplace_back(std::move(values));
  }
  return grid;
}

TuneResult hyper_tune(const TuneRunner& runner, std::vector<Assignment> grid, double init_runtime, int scale) {
  if (grid.empty()) throw ConfigError("hyper_tune needs a non-empty grid");
  if (scale < 2) throw ConfigError("hyper_tune needs scale >= 2");
  if (!(init_runtime > 0)) throw ConfigError("hyper_tune needs a positive initial runtime");

  TuneResult result;
  double budget = init_runtime;
  for (;;) {
    TuneRound round;
    round.budget_s = budget;
    for (const auto& a : grid) {
      ScoredAssignment entry;
      entry.assignment = a;
      entry.records = runner(a, budget);
      entry.score = scoring(entry.records, budget);
      round.entries.push_back(std::move(entry));
    }

    std::vector<std::size_t> order(round.entries.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      const auto& a = round.entries[x];
      const auto& b = round.entries[y];
      if (a.score != b.score) return a.score > b.score;
      return Assignment::value_less(a.assignment, b.assignment);
    });

    const std::size_t size = grid.size();
    if (size <= static_cast<std::size_t>(scale)) {
      result.best = round.entries[order.front()];
      result.rounds.push_back(std::move(round));
      return result;
    }
    const std::size_t keep = (size + scale - 1) / scale;
    std::vector<Assignment> next;
    for (std::size_t i = 0; i < keep; ++i) next.push_back(round.entries[order[i]].assignment);
    result.rounds.push_back(std::move(round));
    grid = std::move(next);
    budget *= scale;
  }
}

TuneResult hyper_tune(const TuneRunner& runner, const std::vector<HyperparameterSpec>& specs,
                      const TuneProfile& profile) {
  return hyper_tune(runner, hyperparm_grid(specs, profile.gridsize), profile.init_runtime, profile.scale);
}

nlohmann::ordered_json tune_report(const TuneResult& result) {
  using nlohmann::ordered_json;
  ordered_json rounds = ordered_json::array();
  for (std::size_t r = 0; r < result.rounds.size(); ++r) {
    const auto& round = result.rounds[r];
    ordered_json entries = ordered_json::array();
    for (const auto& e : round.entries) {
      ordered_json outcomes = ordered_json::array();
      for (const auto& rec : e.records) {
        ordered_json o;
        o["instance"] = rec.instance.label();
        o["seed"] = rec.seed;
        o["status"] = status_label(rec);
        o["elapsed_s"] = rec.elapsed_s;
        outcomes.push_back(std::move(o));
      }
      ordered_json row;
      row["assignment"] = to_json(e.assignment);
      row["score"] = e.score;
      row["outcomes"] = std::move(outcomes);
      entries.push_back(std::move(row));
    }
    ordered_json jr;
    jr["round"] = r + 1;
    jr["budget_s"] = round.budget_s;
    jr["entries"] = std::move(entries);
    rounds.push_back(std::move(jr));
  }
  ordered_json doc;
  doc["best"] = {{"assignment", to_json(result.best.assignment)}, {"score", result.best.score}};
  doc["rounds"] = std::move(rounds);
  return doc;
}

}  // namespace cdesign
