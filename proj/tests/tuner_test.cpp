#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "cdesign/errors.hpp"
#include "cdesign/harness.hpp"
#include "cdesign/tuner.hpp"

namespace cdesign {
namespace {

RunRecord record(bool verified, double elapsed) {
  RunRecord r{InstanceSpec::parse(Family::EPA, "n=5,d=5,m=5"), "stub", {}, 0, RunStatus::Timeout,
              std::nullopt, elapsed, 0, {}, verified};
  if (verified) r.status = RunStatus::Solved;
  return r;
}

HyperparameterSpec real(const char* name, double lo, double hi, double def) {
  return {name, ParamKind::Real, lo, hi, def};
}

// A smooth bump in the assignment values, peaking inside the box.
double bump(const Assignment& a) {
  double s = 0;
  for (const auto& [name, v] : a.values()) s += (v - 0.37) * (v - 0.37);
  return 1.0 / (1.0 + s);
}

TuneRunner synthetic_runner(std::vector<double>* budgets = nullptr) {
  return [budgets](const Assignment& a, double budget) {
    if (budgets) budgets->push_back(budget);
    // elapsed encodes the bump so scoring preserves its order exactly
    return std::vector<RunRecord>{record(true, budget * (1.0 - bump(a)))};
  };
}

}  // namespace

// ---- scoring ----

TEST(ScoringTest, NothingVerifiedScoresZero) {
  const std::vector<RunRecord> rs = {record(false, 0.1), record(false, 0.2)};
  EXPECT_EQ(scoring(rs, 1.0), 0.0);
  EXPECT_EQ(scoring({}, 1.0), 0.0);
}

TEST(ScoringTest, BonusBounds) {
  const std::vector<RunRecord> slow = {record(true, 1.0), record(true, 1.0)};
  EXPECT_DOUBLE_EQ(scoring(slow, 1.0), 2.0);
  const std::vector<RunRecord> fast = {record(true, 0.0), record(true, 0.0)};
  EXPECT_DOUBLE_EQ(scoring(fast, 1.0), 3.0);
  const std::vector<RunRecord> over = {record(true, 5.0)};
  EXPECT_DOUBLE_EQ(scoring(over, 1.0), 1.0);
}

TEST(ScoringTest, FasterScoresHigher) {
  const std::vector<RunRecord> a = {record(true, 0.2), record(false, 0)};
  const std::vector<RunRecord> b = {record(true, 0.8), record(false, 0)};
  EXPECT_GT(scoring(a, 1.0), scoring(b, 1.0));
}

TEST(ScoringTest, OneMoreVerifiedAddsAtLeastOne) {
  std::vector<RunRecord> rs = {record(true, 0.0), record(false, 0.5), record(false, 1.0)};
  const double before = scoring(rs, 1.0);
  rs[2] = record(true, 1.0);
  EXPECT_GE(scoring(rs, 1.0) - before, 1.0 - 1e-12);
}

TEST(ScoringTest, RejectsNonPositiveMaxtime) {
  EXPECT_THROW(scoring({}, 0.0), ConfigError);
  EXPECT_THROW(scoring({}, -1.0), ConfigError);
}

// ---- one_grid ----

TEST(OneGridTest, TwoPointsAreTheEndpoints) {
  EXPECT_EQ(one_grid(0, 1, 2), (std::vector<double>{0, 1}));
}

TEST(OneGridTest, CoolingRateGridHoldsExactEndpoints) {
  const auto g = one_grid(0.5, 1.0, 8);
  EXPECT_EQ(std::count(g.begin(), g.end(), 0.5), 1);
  EXPECT_EQ(std::count(g.begin(), g.end(), 1.0), 1);
  EXPECT_EQ(g.size(), 8u);
}

TEST(OneGridTest, IntegerGridsCollapse) {
  EXPECT_EQ(one_grid(1, 3, 10, ParamKind::Integer), (std::vector<double>{1, 2, 3}));
}

TEST(OneGridTest, EndsClusterByDecades) {
  // points = 12: three values per end, six interior
  const auto g = one_grid(0, 1, 12);
  ASSERT_EQ(g.size(), 12u);
  EXPECT_DOUBLE_EQ(g[1], 0.01);
  EXPECT_DOUBLE_EQ(g[2], 0.1);
  EXPECT_DOUBLE_EQ(g[10], 0.99);
  EXPECT_DOUBLE_EQ(g[9], 0.9);
}

TEST(OneGridTest, DegenerateInputs) {
  EXPECT_EQ(one_grid(2, 5, 1), (std::vector<double>{2}));
  EXPECT_EQ(one_grid(4, 4, 9), (std::vector<double>{4}));
  EXPECT_THROW(one_grid(1, 0, 3), ConfigError);
  EXPECT_THROW(one_grid(0, 1, 0), ConfigError);
}

TEST(OneGridTest, SortedDistinctBracketed) {
  for (int points = 1; points <= 60; ++points) {
    for (auto [lo, hi] : {std::pair{0.01, 2.0}, std::pair{0.5, 1.0}, std::pair{-3.0, 7.5}, std::pair{100.0, 1e6}}) {
      for (ParamKind kind : {ParamKind::Real, ParamKind::Integer}) {
        if (kind == ParamKind::Integer && (lo != std::floor(lo) || hi != std::floor(hi))) continue;
        const auto g = one_grid(lo, hi, points, kind);
        ASSERT_FALSE(g.empty());
        EXPECT_LE(g.size(), static_cast<std::size_t>(points));
        EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
        EXPECT_EQ(std::adjacent_find(g.begin(), g.end()), g.end());
        EXPECT_EQ(g.front(), lo);
        if (points >= 2) {
          EXPECT_EQ(g.back(), hi);
        }
        for (double v : g) {
          EXPECT_GE(v, lo);
          EXPECT_LE(v, hi);
        }
      }
    }
  }
}

// ---- hyperparm_grid ----

TEST(HyperGridTest, NoParametersGivesOneEmptyAssignment) {
  const auto g = hyperparm_grid({}, 100);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_TRUE(g[0].empty());
}

TEST(HyperGridTest, SingleRealParameter) {
  const auto g = hyperparm_grid({real("T", 0.01, 2.0, 0.5)}, 10);
  std::vector<double> values;
  for (const auto& a : g) values.push_back(a.get("T"));
  std::sort(values.begin(), values.end());
  EXPECT_EQ(std::adjacent_find(values.begin(), values.end()), values.end());
  EXPECT_EQ(values.front(), 0.01);
  EXPECT_EQ(values.back(), 2.0);
  EXPECT_LE(g.size(), 10u);
  // both halves contribute one_grid(0.01, 2, 5) points, which coincide
  EXPECT_EQ(g.size(), one_grid(0.01, 2.0, 5).size());
}

TEST(HyperGridTest, CornersOfEveryParameterAppear) {
  const std::vector<HyperparameterSpec> specs = {real("a", 0, 1, 0.3), real("b", -2, 2, 1.5)};
  const auto g = hyperparm_grid(specs, 1000);
  EXPECT_LE(g.size(), 1000u);
  for (const auto& s : specs) {
    for (double v : {s.min, s.max, s.default_value}) {
      EXPECT_TRUE(std::any_of(g.begin(), g.end(), [&](const Assignment& a) { return a.get(s.name) == v; }))
          << s.name << "=" << v;
    }
  }
}

TEST(HyperGridTest, NeverExceedsTheRequestedSizeAndHasNoDuplicates) {
  const auto& specs = find_algorithm("sa-reset").hyperparameters;
  for (int size : {1, 2, 3, 4, 7, 10, 27, 50, 100, 333, 1000}) {
    const auto g = hyperparm_grid(specs, size);
    EXPECT_LE(g.size(), static_cast<std::size_t>(size));
    std::set<std::vector<double>> seen;
    for (const auto& a : g) {
      std::vector<double> key;
      for (const auto& [n, v] : a.values()) key.push_back(v);
      EXPECT_TRUE(seen.insert(key).second);
      EXPECT_NO_THROW(check_assignment(specs, a));
    }
  }
}

TEST(HyperGridTest, CoolingRateOfOneIsOffered) {
  const auto& specs = find_algorithm("sa-reset").hyperparameters;
  for (int size = 4; size <= 1000; size += 12) {
    const auto g = hyperparm_grid(specs, size);
    EXPECT_TRUE(std::any_of(g.begin(), g.end(), [](const Assignment& a) { return a.get("cooling_rate") == 1.0; }))
        << "gridsize " << size;
  }
}

// ---- hyper_tune ----

namespace {

std::vector<Assignment> line_grid(int n) {
  std::vector<Assignment> g;
  for (int i = 0; i < n; ++i) g.emplace_back(std::vector<std::pair<std::string, double>>{{"x", i / double(n)}});
  return g;
}

}  // namespace

TEST(HyperTuneTest, SmallGridIsOneRound) {
  std::vector<double> budgets;
  const auto grid = line_grid(7);
  const auto r = hyper_tune(synthetic_runner(&budgets), grid, 0.1, 10);
  ASSERT_EQ(r.rounds.size(), 1u);
  EXPECT_EQ(budgets.size(), 7u);
  const auto best = std::max_element(grid.begin(), grid.end(),
                                     [](const auto& a, const auto& b) { return bump(a) < bump(b); });
  EXPECT_EQ(r.best.assignment, *best);
}

TEST(HyperTuneTest, HundredPointsTakeTwoRounds) {
  std::vector<double> budgets;
  const auto r = hyper_tune(synthetic_runner(&budgets), line_grid(100), 0.1, 10);
  ASSERT_EQ(r.rounds.size(), 2u);
  EXPECT_EQ(r.rounds[0].entries.size(), 100u);
  EXPECT_EQ(r.rounds[1].entries.size(), 10u);
  EXPECT_DOUBLE_EQ(r.rounds[0].budget_s, 0.1);
  EXPECT_DOUBLE_EQ(r.rounds[1].budget_s, 1.0);
  EXPECT_EQ(budgets.size(), 110u);
}

TEST(HyperTuneTest, ReturnsTheArgmaxOfTheSurvivors) {
  const auto& specs = find_algorithm("sa-reset").hyperparameters;
  const auto grid = hyperparm_grid(specs, 100);
  const auto r = hyper_tune(synthetic_runner(), grid, 0.1, 10);
  const auto& last = r.rounds.back().entries;
  const auto best = std::max_element(last.begin(), last.end(), [](const auto& a, const auto& b) {
    return bump(a.assignment) < bump(b.assignment);
  });
  EXPECT_EQ(r.best.assignment, best->assignment);
  EXPECT_NE(std::find(grid.begin(), grid.end(), r.best.assignment), grid.end());
}

TEST(HyperTuneTest, TiesGoToTheSmallerValues) {
  const TuneRunner flat = [](const Assignment&, double b) { return std::vector<RunRecord>{record(true, b / 2)}; };
  auto grid = line_grid(25);
  std::reverse(grid.begin(), grid.end());
  const auto r = hyper_tune(flat, grid, 0.5, 10);
  EXPECT_EQ(r.best.assignment.get("x"), 0.0);
  ASSERT_EQ(r.rounds.size(), 2u);
  EXPECT_EQ(r.rounds[1].entries.size(), 3u);
}

TEST(HyperTuneTest, RoundsShrinkByTheScale) {
  std::vector<double> budgets;
  const auto r = hyper_tune(synthetic_runner(&budgets), line_grid(1000), 0.5, 10);
  ASSERT_EQ(r.rounds.size(), 3u);
  EXPECT_EQ(r.rounds[1].entries.size(), 100u);
  EXPECT_EQ(r.rounds[2].entries.size(), 10u);
  EXPECT_DOUBLE_EQ(r.rounds[2].budget_s, 50.0);
}

TEST(HyperTuneTest, RejectsBadSettings) {
  EXPECT_THROW(hyper_tune(synthetic_runner(), {}, 0.1, 10), ConfigError);
  EXPECT_THROW(hyper_tune(synthetic_runner(), line_grid(3), 0.1, 1), ConfigError);
  EXPECT_THROW(hyper_tune(synthetic_runner(), line_grid(3), 0.0, 10), ConfigError);
}

TEST(HyperTuneTest, ReproducibleWithADeterministicRunner) {
  const auto& specs = find_algorithm("ga").hyperparameters;
  const auto a = tune_report(hyper_tune(synthetic_runner(), specs, TuneProfile::desk())).dump();
  const auto b = tune_report(hyper_tune(synthetic_runner(), specs, TuneProfile::desk())).dump();
  EXPECT_EQ(a, b);
}

TEST(HyperTuneTest, ReportListsRounds) {
  const auto report = tune_report(hyper_tune(synthetic_runner(), line_grid(20), 0.1, 10));
  ASSERT_EQ(report["rounds"].size(), 2u);
  EXPECT_EQ(report["rounds"][0]["entries"].size(), 20u);
  EXPECT_EQ(report["rounds"][0]["entries"][0]["outcomes"][0]["status"], "solved");
  EXPECT_TRUE(report["best"].contains("assignment"));
}

// ---- hyperparameters ----

TEST(HyperparameterTest, ReadsTheJsonForm) {
  const auto s = hyperparameter_from_json(nlohmann::json::parse(R"({"name":"gamma","min":0.0,"max":2.0,"default":0.5})"));
  EXPECT_EQ(s.name, "gamma");
  EXPECT_EQ(s.kind, ParamKind::Real);
  EXPECT_EQ(s.min, 0.0);
  EXPECT_EQ(s.max, 2.0);
  EXPECT_EQ(s.default_value, 0.5);
  EXPECT_EQ(hyperparameter_from_json(to_json(s)), s);

  const auto i = hyperparameter_from_json(nlohmann::json::parse(R"({"name":"pop","min":2,"max":200,"default":100})"));
  EXPECT_EQ(i.kind, ParamKind::Integer);
  EXPECT_EQ(hyperparameter_from_json(to_json(i)), i);
}

TEST(HyperparameterTest, RejectsInconsistentRanges) {
  EXPECT_THROW(hyperparameter_from_json(nlohmann::json::parse(R"({"name":"g","min":1,"max":0,"default":0.5})")),
               ConfigError);
  EXPECT_THROW(hyperparameter_from_json(nlohmann::json::parse(R"({"name":"g","min":0,"max":1})")), ConfigError);
  EXPECT_THROW(
      hyperparameter_from_json(nlohmann::json::parse(R"({"name":"g","kind":"integer","min":0,"max":1.5,"default":1})")),
      ConfigError);
}

TEST(HyperparameterTest, OverridesApplyOnTopOfDefaults) {
  const auto& specs = find_algorithm("sa-reset").hyperparameters;
  const auto a = make_assignment(specs, "cooling_rate=1, T0=0.25");
  EXPECT_EQ(a.get("T0"), 0.25);
  EXPECT_EQ(a.get("cooling_rate"), 1.0);
  EXPECT_EQ(a.get("reset_period"), 10000);
  EXPECT_EQ(a.to_string(), "T0=0.25,cooling_rate=1,reset_period=10000");
  EXPECT_THROW(make_assignment(specs, "cooling_rate=1.5"), ConfigError);
  EXPECT_THROW(make_assignment(specs, "reset_period=10.5"), ConfigError);
  EXPECT_THROW(make_assignment(specs, "alpha=1"), ConfigError);
  EXPECT_THROW(make_assignment(specs, "T0"), ConfigError);
  EXPECT_THROW(make_assignment(specs, "T0=abc"), ConfigError);
}

}  // namespace cdesign
