#include <cmath>

#include "cdesign/search.hpp"

namespace cdesign {

Budget Budget::wall_clock(double seconds) {
  if (!(seconds >= 0) || !std::isfinite(seconds)) throw ConfigError("wall-clock budget must be a finite non-negative number of seconds");
  Budget b;
  b.wall_clock_ = true;
  b.seconds_ = seconds;
  return b;
}

Budget Budget::iterations(std::uint64_t count) {
  Budget b;
  b.iterations_ = count;
  return b;
}

BudgetClock::BudgetClock(const Budget& budget, std::uint64_t check_interval)
    : budget_(budget), interval_(check_interval == 0 ? 1 : check_interval), start_(Clock::now()) {
  deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(budget.seconds()));
}

bool BudgetClock::spent(std::uint64_t iterations_done) {
  if (!budget_.is_wall_clock()) return iterations_done >= budget_.max_iterations();
  if (expired_) return true;
  if (iterations_done % interval_ == 0 && Clock::now() >= deadline_) expired_ = true;
  return expired_;
}

double BudgetClock::elapsed() const {
  return std::chrono::duration<double>(Clock::now() - start_).count();
}

}  // namespace cdesign
