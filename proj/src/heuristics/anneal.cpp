#include <cassert>
#include <cmath>

#include "cdesign/heuristics.hpp"

namespace cdesign {

namespace {

template <typename State>
SearchOutcome anneal(const InstanceSpec& spec, std::uint64_t seed, const Budget& budget,
                     const ResetSchedule& schedule) {
  BudgetClock clock(budget, kAnnealCheckInterval);
  Rng rng(seed);
  State state(spec, rng);

  long long current = state.cost();
  SearchOutcome out;
  out.final_cost = current;
  out.best = state.render();

  double temperature = schedule.initial_temperature;
  std::uint64_t iter = 0;
  while (current > 0 && state.has_moves() && !clock.spent(iter)) {
    ++iter;
    const auto move = state.random_move(rng);
    const long long delta = state.delta(move);
    if (delta <= 0 || rng.unit() < std::exp(-static_cast<double>(delta) / temperature)) {
      state.apply(move);
      current += delta;
      assert(state.structure_ok());
      if (current < out.final_cost) {
        out.final_cost = current;
        out.best = state.render();
      }
    }
    temperature *= schedule.cooling_rate;
    if (iter % schedule.reset_period == 0) temperature = schedule.initial_temperature;
  }

  out.solved = current == 0;
  out.iterations = iter;
  out.elapsed_s = clock.elapsed();
  return out;
}

void check_schedule(const ResetSchedule& s) {
  if (!(s.initial_temperature > 0) || !std::isfinite(s.initial_temperature)) {
    throw ConfigError("temperature must be positive");
  }
  if (!(s.cooling_rate > 0 && s.cooling_rate <= 1)) throw ConfigError("cooling_rate must be in (0, 1]");
  if (s.reset_period < 1) throw ConfigError("reset_period must be at least 1");
}

}  // namespace

SearchOutcome sa_with_resets(const InstanceSpec& spec, std::uint64_t seed, const Budget& budget,
                             const ResetSchedule& schedule) {
  check_schedule(schedule);
  switch (spec.family()) {
    case Family::EPA: return anneal<EpaState>(spec, seed, budget, schedule);
    case Family::PA: return anneal<PaState>(spec, seed, budget, schedule);
    case Family::SymmW:
    case Family::SkewW: return anneal<WeighingState>(spec, seed, budget, schedule);
    default: break;
  }
  throw ConfigError("simulated annealing does not support " + spec.label());
}

SearchOutcome sa_constant_temperature(const InstanceSpec& spec, std::uint64_t seed, const Budget& budget,
                                      double temperature) {
  return sa_with_resets(spec, seed, budget, ResetSchedule{temperature, 1.0, 1});
}

}  // namespace cdesign
