#pragma once

#include <cstdint>

#include "cdesign/cost_state.hpp"
#include "cdesign/search.hpp"

namespace cdesign {

// Search drivers. All of them are single-threaded, own their state, and
// draw randomness only from an Rng seeded with `seed`; under an iteration
// budget the outcome is a pure function of the arguments.
//
// A driver whose instance admits no moves at all (EPA with n < 2, PA with
// v < 2, SkewW with n < 2, BTD rows holding a single value) returns after
// evaluating the initial state.

/// Best-improvement local search for EPA. Each step picks a random row
/// among those with nonzero row cost, evaluates every column swap in it,
/// and applies the cheapest one even if it worsens the cost (ties broken
/// uniformly at random).
SearchOutcome local_search_epa(const InstanceSpec& spec, std::uint64_t seed, const Budget& budget);

/// Metropolis search at a fixed temperature: improving and neutral moves are
/// always taken, worsening moves with probability exp(-delta / temperature).
/// Supports EPA, PA, SymmW, SkewW. Throws ConfigError if temperature <= 0.
SearchOutcome sa_constant_temperature(const InstanceSpec& spec, std::uint64_t seed, const Budget& budget,
                                      double temperature);

struct ResetSchedule {
  double initial_temperature = 1.0;
  /// Multiplies the temperature after every iteration, accepted or not.
  double cooling_rate = 1.0;
  /// Every this many iterations the temperature returns to its initial value.
  std::uint64_t reset_period = 10000;
};

/// Annealing with geometric cooling and periodic reheating. With
/// cooling_rate == 1 it makes exactly the same draws and decisions as
/// sa_constant_temperature(initial_temperature). Throws ConfigError unless
/// initial_temperature > 0, 0 < cooling_rate <= 1, reset_period >= 1.
SearchOutcome sa_with_resets(const InstanceSpec& spec, std::uint64_t seed, const Budget& budget,
                             const ResetSchedule& schedule);

struct GaParams {
  int population = 100;
  double mutation_rate = 0.2;
  int tournament_size = 3;
};

/// Generational GA over BTD states with no elitism: every generation is
/// replaced wholesale by offspring of tournament-selected parents. Crossover
/// takes each element row from either parent with equal probability, and
/// mutation swaps two differing entries of a row with probability
/// mutation_rate per row, so every individual keeps its row multiplicities.
/// One iteration is one generation. Throws ConfigError on bad parameters.
SearchOutcome ga_btd(const InstanceSpec& spec, std::uint64_t seed, const Budget& budget, const GaParams& params);

/// Randomized backtracking for FR: cells are filled row-major, the unused
/// symbols of the row are tried in a freshly shuffled order at each cell,
/// and the (a, b, step) occupancy table prunes any reuse. One iteration is
/// one placement. Sets proven_infeasible when the whole tree was searched
/// without a solution.
SearchOutcome dfs_florentine(const InstanceSpec& spec, std::uint64_t seed, const Budget& budget);

}  // namespace cdesign
