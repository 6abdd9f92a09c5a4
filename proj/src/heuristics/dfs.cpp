#include <algorithm>

#include "cdesign/heuristics.hpp"

namespace cdesign {

namespace {

class FlorentineSearch {
 public:
  FlorentineSearch(int rows, int n, std::uint64_t seed, const Budget& budget)
      : board_(rows, n),
        rng_(seed),
        clock_(budget, kDfsCheckInterval),
        choices_(static_cast<std::size_t>(rows) * n) {}

  bool run() { return fill(0); }

  bool interrupted() const { return interrupted_; }
  std::uint64_t placements() const { return placements_; }
  int deepest() const { return deepest_; }
  double elapsed() const { return clock_.elapsed(); }
  DesignMatrix render() const { return board_.render(); }

 private:
  bool fill(int cell) {
    const int n = board_.n();
    deepest_ = std::max(deepest_, cell);
    if (cell == board_.rows() * n) return true;
    const int row = cell / n;
    const int col = cell % n;

    auto& order = choices_[cell];
    order.clear();
    for (int s = 0; s < n; ++s) {
      if (!board_.row_uses(row, s)) order.push_back(s);
    }
    rng_.shuffle(std::span<int>(order));

    for (int symbol : order) {
      if (!board_.can_place(row, col, symbol)) continue;
      if (clock_.spent(placements_)) {
        interrupted_ = true;
        return false;
      }
      ++placements_;
      board_.place(row, col, symbol);
      if (fill(cell + 1)) return true;
      board_.unplace(row, col);
      if (interrupted_) return false;
    }
    return false;
  }

  FlorentineBoard board_;
  Rng rng_;
  BudgetClock clock_;
  std::vector<std::vector<int>> choices_;
  std::uint64_t placements_ = 0;
  int deepest_ = 0;
  bool interrupted_ = false;
};

}  // namespace

SearchOutcome dfs_florentine(const InstanceSpec& spec, std::uint64_t seed, const Budget& budget) {
  if (spec.family() != Family::FR) throw ConfigError("DFS supports FR only, got " + spec.label());
  FlorentineSearch search(spec.get("r"), spec.get("n"), seed, budget);
  SearchOutcome out;
  out.solved = search.run();
  out.proven_infeasible = !out.solved && !search.interrupted();
  if (out.solved) out.best = search.render();
  // Cells the deepest partial rectangle left empty.
  out.final_cost = static_cast<long long>(spec.rows()) * spec.cols() - search.deepest();
  out.iterations = search.placements();
  out.elapsed_s = search.elapsed();
  return out;
}

}  // namespace cdesign
