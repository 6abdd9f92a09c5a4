#pragma once

#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "cdesign/hyperparams.hpp"
#include "cdesign/run_record.hpp"

namespace cdesign {

/// Verified count plus a speed bonus: each verified record contributes
/// 1 + (maxtime - elapsed) / (maxtime * |records|), elapsed clamped to
/// [0, maxtime]. The total bonus is therefore within [0, 1]. Empty input
/// scores 0. Throws ConfigError if maxtime <= 0.
double scoring(std::span<const RunRecord> records, double maxtime);

/// At most `points` sorted, distinct values in [min, max], with min and max
/// present exactly once points >= 2. E = max(1, points / 4) values hug each
/// end at decade offsets (min + range * 10^-j for j = 1..E-1, mirrored at
/// max); the rest are evenly spaced through the interior. Integer kinds are
/// rounded to nearest and deduplicated. Throws ConfigError if min > max or
/// points < 1.
std::vector<double> one_grid(double min, double max, int points, ParamKind kind = ParamKind::Real);

/// Union of a balanced cross product of one_grids with, per parameter i,
/// a finer one_grid on i crossed with {min, max, default} of every other
/// parameter. The per-parameter grids come first and the balanced grid is
/// appended last, so when the union exceeds `gridsize` it is the balanced
/// tail that gets cut. No parameters yields one empty assignment.
std::vector<Assignment> hyperparm_grid(const std::vector<HyperparameterSpec>& specs, int gridsize);

struct ScoredAssignment {
  Assignment assignment;
  double score = 0;
  std::vector<RunRecord> records;
};

struct TuneRound {
  double budget_s = 0;
  /// In grid order.
  std::vector<ScoredAssignment> entries;
};

struct TuneResult {
  ScoredAssignment best;
  std::vector<TuneRound> rounds;
};

/// Evaluates an assignment on the dev instances with the given per-run
/// wall-clock budget.
using TuneRunner = std::function<std::vector<RunRecord>(const Assignment&, double budget_s)>;

struct TuneProfile {
  int gridsize = 1000;
  double init_runtime = 0.5;
  int scale = 10;

  static TuneProfile full() { return {1000, 0.5, 10}; }
  static TuneProfile desk() { return {100, 0.1, 10}; }
};

/// Scores the grid at the current budget; if the grid has at most `scale`
/// entries the best one is returned, otherwise the top ceil(|grid| / scale)
/// go on to the next round at budget * scale. Ranking is by score, with
/// ties broken toward the lexicographically smaller assignment values.
/// Throws ConfigError on an empty grid, scale < 2, or init_runtime <= 0.
TuneResult hyper_tune(const TuneRunner& runner, std::vector<Assignment> grid, double init_runtime, int scale);

TuneResult hyper_tune(const TuneRunner& runner, const std::vector<HyperparameterSpec>& specs,
                      const TuneProfile& profile);

/// Per-round tables: assignment, score, and per-record outcomes.
nlohmann::ordered_json tune_report(const TuneResult& result);

}  // namespace cdesign
