#include <cassert>
#include <limits>

#include "cdesign/heuristics.hpp"

namespace cdesign {

SearchOutcome local_search_epa(const InstanceSpec& spec, std::uint64_t seed, const Budget& budget) {
  if (spec.family() != Family::EPA) throw ConfigError("local search supports EPA only, got " + spec.label());
  BudgetClock clock(budget, kLocalSearchCheckInterval);
  Rng rng(seed);
  EpaState state(spec, rng);

  SearchOutcome out;
  out.final_cost = state.cost();
  out.best = state.render();

  // The row filter keeps rows that contribute to the cost, not merely rows
  // at nonzero distance from some other row (which would be nearly all).
  std::vector<int> candidates;
  candidates.reserve(static_cast<std::size_t>(state.rows()));
  std::uint64_t iter = 0;
  while (state.cost() > 0 && state.has_moves() && !clock.spent(iter)) {
    ++iter;
    candidates.clear();
    for (int r = 0; r < state.rows(); ++r) {
      if (state.row_cost(r) > 0) candidates.push_back(r);
    }
    const int row = candidates[rng.below(candidates.size())];

    EpaState::Move chosen{row, 0, 1};
    long long best_delta = std::numeric_limits<long long>::max();
    std::uint64_t ties = 0;
    for (int c1 = 0; c1 < state.cols(); ++c1) {
      for (int c2 = c1 + 1; c2 < state.cols(); ++c2) {
        const EpaState::Move mv{row, c1, c2};
        const long long delta = state.delta(mv);
        if (delta < best_delta) {
          best_delta = delta;
          chosen = mv;
          ties = 1;
        } else if (delta == best_delta && rng.below(++ties) == 0) {
          chosen = mv;
        }
      }
    }
    state.apply(chosen);
    assert(state.structure_ok());
    if (state.cost() < out.final_cost) {
      out.final_cost = state.cost();
      out.best = state.render();
    }
  }

  out.solved = state.cost() == 0;
  out.iterations = iter;
  out.elapsed_s = clock.elapsed();
  return out;
}

}  // namespace cdesign
