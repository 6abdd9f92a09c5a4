#include <cassert>
#include <cmath>

#include "cdesign/heuristics.hpp"

namespace cdesign {

namespace {

const BtdState& tournament(const std::vector<BtdState>& pop, int size, Rng& rng) {
  const BtdState* winner = &pop[rng.below(pop.size())];
  for (int t = 1; t < size; ++t) {
    const BtdState& rival = pop[rng.below(pop.size())];
    if (rival.cost() < winner->cost()) winner = &rival;
  }
  return *winner;
}

}  // namespace

SearchOutcome ga_btd(const InstanceSpec& spec, std::uint64_t seed, const Budget& budget, const GaParams& params) {
  if (spec.family() != Family::BTD) throw ConfigError("genetic algorithm supports BTD only, got " + spec.label());
  if (params.population < 1) throw ConfigError("population must be at least 1");
  if (!(params.mutation_rate > 0 && params.mutation_rate <= 1)) throw ConfigError("mutation_rate must be in (0, 1]");
  if (params.tournament_size < 1) throw ConfigError("tournament_size must be at least 1");

  BudgetClock clock(budget, kGeneticCheckInterval);
  Rng rng(seed);
  std::vector<BtdState> population;
  population.reserve(static_cast<std::size_t>(params.population));
  for (int i = 0; i < params.population; ++i) population.emplace_back(spec, rng);

  SearchOutcome out;
  auto record_best = [&](const std::vector<BtdState>& pop) {
    for (const auto& ind : pop) {
      if (!out.best || ind.cost() < out.final_cost) {
        out.final_cost = ind.cost();
        out.best = ind.render();
      }
    }
  };
  record_best(population);

  const int rows = spec.rows();
  DesignMatrix child(rows, spec.cols());
  std::vector<BtdState> next;
  next.reserve(population.size());
  std::uint64_t generation = 0;
  while (out.final_cost > 0 && !clock.spent(generation)) {
    ++generation;
    next.clear();
    for (int i = 0; i < params.population; ++i) {
      const BtdState& a = tournament(population, params.tournament_size, rng);
      const BtdState& b = tournament(population, params.tournament_size, rng);
      for (int r = 0; r < rows; ++r) {
        const DesignMatrix& src = rng.coin(0.5) ? a.matrix() : b.matrix();
        std::copy(src.row(r), src.row(r) + child.cols(), child.row(r));
      }
      BtdState offspring(spec, child);
      if (offspring.has_moves()) {
        for (int r = 0; r < rows; ++r) {
          if (!rng.coin(params.mutation_rate)) continue;
          offspring.apply(offspring.random_move_in_row(r, rng));
        }
      }
      assert(offspring.structure_ok());
      next.push_back(std::move(offspring));
    }
    population.swap(next);
    record_best(population);
  }

  out.solved = out.final_cost == 0;
  out.iterations = generation;
  out.elapsed_s = clock.elapsed();
  return out;
}

}  // namespace cdesign
