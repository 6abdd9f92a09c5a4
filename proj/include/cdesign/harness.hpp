#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cdesign/designs.hpp"
#include "cdesign/hyperparams.hpp"
#include "cdesign/run_record.hpp"
#include "cdesign/search.hpp"

namespace cdesign {

using SolveFn =
    std::function<SearchOutcome(const InstanceSpec&, std::uint64_t seed, const Budget&, const Assignment&)>;

/// A named search driver with its tunable parameters.
struct Algorithm {
  std::string name;
  std::vector<Family> families;
  std::vector<HyperparameterSpec> hyperparameters;
  SolveFn solve;

  bool supports(Family f) const;
};

/// sa-const, sa-reset, local-search, ga, dfs.
const std::vector<Algorithm>& builtin_algorithms();

/// Throws ConfigError on an unknown name.
const Algorithm& find_algorithm(std::string_view name);

struct BatchPlan {
  std::vector<InstanceSpec> instances;
  int seeds_per_instance = 1;
  Budget budget = Budget::iterations(1);
  int parallelism = 1;
  /// Run i (instance-major, then seed) gets seed_base + i.
  std::uint64_t seed_base = 1;
};

/// CDESIGN_PARALLELISM if set to a positive integer, else the CPU count
/// (at least 1).
int default_parallelism();

/// Runs |instances| x seeds_per_instance searches on at most `parallelism`
/// threads and returns the records in (instance, seed) order. Every claimed
/// solution is checked with the verifier here. A run that throws becomes an
/// Error record whose detail starts with its kind ("config", "spec",
/// "structural", "exception"). Throws ConfigError up front on a bad plan,
/// an unsupported family, or an assignment that does not fit the algorithm.
std::vector<RunRecord> exec_batch(const BatchPlan& plan, const Algorithm& algorithm, const Assignment& assignment);

struct ReportOptions {
  /// When set, the summary carries the tuning score at this budget.
  std::optional<double> maxtime;
  /// Off drops every wall-clock field, so reports of iteration-budget runs
  /// compare byte for byte.
  bool include_timing = true;
};

/// {"records": [...], "summary": {...}} with a fixed key order.
nlohmann::ordered_json run_manifest(const std::vector<RunRecord>& records, const ReportOptions& options = {});

}  // namespace cdesign
