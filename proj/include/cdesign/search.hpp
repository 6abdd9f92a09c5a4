#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "cdesign/designs.hpp"

namespace cdesign {

/// Either a wall-clock limit or an iteration limit, never both. Iteration
/// budgets make a run a pure function of (instance, seed, hyperparameters).
class Budget {
 public:
  static Budget wall_clock(double seconds);
  static Budget iterations(std::uint64_t count);

  bool is_wall_clock() const noexcept { return wall_clock_; }
  double seconds() const noexcept { return seconds_; }
  std::uint64_t max_iterations() const noexcept { return iterations_; }

 private:
  Budget() = default;
  bool wall_clock_ = false;
  double seconds_ = 0;
  std::uint64_t iterations_ = 0;
};

/// Cooperative budget enforcement. Drivers call `spent(i)` before each
/// iteration; under a wall-clock budget the clock is only read every
/// `check_interval` iterations.
class BudgetClock {
 public:
  BudgetClock(const Budget& budget, std::uint64_t check_interval);

  bool spent(std::uint64_t iterations_done);
  double elapsed() const;

 private:
  using Clock = std::chrono::steady_clock;
  Budget budget_;
  std::uint64_t interval_;
  Clock::time_point start_;
  Clock::time_point deadline_;
  bool expired_ = false;
};

// Deadline check intervals, in iterations, per driver.
inline constexpr std::uint64_t kAnnealCheckInterval = 4096;
inline constexpr std::uint64_t kLocalSearchCheckInterval = 64;
inline constexpr std::uint64_t kGeneticCheckInterval = 1;
inline constexpr std::uint64_t kDfsCheckInterval = 4096;

struct SearchOutcome {
  bool solved = false;
  /// Set only by dfs_florentine, when the whole tree was searched.
  bool proven_infeasible = false;
  /// The solution when solved; otherwise the lowest-cost state seen
  /// (absent for the DFS, which has no partial-cost notion).
  std::optional<DesignMatrix> best;
  long long final_cost = 0;
  std::uint64_t iterations = 0;
  double elapsed_s = 0;

  /// Everything except elapsed time.
  bool same_result(const SearchOutcome& o) const {
    return solved == o.solved && proven_infeasible == o.proven_infeasible && best == o.best &&
           final_cost == o.final_cost && iterations == o.iterations;
  }
};

}  // namespace cdesign
