#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <thread>

#include "cdesign/errors.hpp"
#include "cdesign/harness.hpp"

namespace cdesign {

int default_parallelism() {
  if (const char* env = std::getenv("CDESIGN_PARALLELISM")) {
    int n = 0;
    const char* end = env + std::strlen(env);
    const auto [ptr, ec] = std::from_chars(env, end, n);
    if (ec == std::errc{} && ptr == end && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

RunRecord run_one(const InstanceSpec& spec, std::uint64_t seed, const Budget& budget, const Algorithm& algorithm,
                  const Assignment& assignment) {
  RunRecord rec{spec, algorithm.name, assignment, seed, RunStatus::Error, std::nullopt, 0, 0, {}, false};

  const auto start = std::chrono::steady_clock::now();
  const auto since_start = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  SearchOutcome out;
  try {
    out = algorithm.solve(spec, seed, budget, assignment);
  } catch (const ConfigError& e) {
    rec.detail = std::string("config: ") + e.what();
  } catch (const SpecError& e) {
    rec.detail = std::string("spec: ") + e.what();
  } catch (const StructuralError& e) {
    rec.detail = std::string("structural: ") + e.what();
  } catch (const std::exception& e) {
    rec.detail = std::string("exception: ") + e.what();
  } catch (...) {
    rec.detail = "exception: unknown";
  }
  if (!rec.detail.empty()) {
    rec.status = RunStatus::Error;
    rec.elapsed_s = since_start();
    return rec;
  }

  rec.elapsed_s = out.elapsed_s;
  rec.iterations = out.iterations;
  if (out.solved) {
    rec.status = RunStatus::Solved;
    if (!out.best) {
      rec.detail = "solver claimed success without a matrix";
      return rec;
    }
    rec.solution = out.best;
    try {
      const auto report = verify(spec, *out.best);
      rec.verified = report.valid;
      if (!report.valid && report.violation) rec.detail = report.violation->describe();
    } catch (const StructuralError& e) {
      rec.detail = std::string("structural: ") + e.what();
    }
  } else {
    rec.status = out.proven_infeasible ? RunStatus::Infeasible : RunStatus::Timeout;
  }
  return rec;
}

}  // namespace

std::vector<RunRecord> exec_batch(const BatchPlan& plan, const Algorithm& algorithm, const Assignment& assignment) {
  if (plan.parallelism < 1) throw ConfigError("parallelism must be at least 1");
  if (plan.seeds_per_instance < 1) throw ConfigError("seeds per instance must be at least 1");
  if (!algorithm.solve) throw ConfigError("algorithm '" + algorithm.name + "' has no solver");
  for (const auto& spec : plan.instances) {
    if (!algorithm.supports(spec.family())) {
      throw ConfigError("algorithm '" + algorithm.name + "' does not handle " + std::string(to_string(spec.family())));
    }
  }
  check_assignment(algorithm.hyperparameters, assignment);

  const std::size_t seeds = static_cast<std::size_t>(plan.seeds_per_instance);
  const std::size_t total = plan.instances.size() * seeds;
  std::vector<std::optional<RunRecord>> slots(total);
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      slots[i] = run_one(plan.instances[i / seeds], plan.seed_base + i, plan.budget, algorithm, assignment);
    }
  };

  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(plan.parallelism), total);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  std::vector<RunRecord> records;
  records.reserve(total);
  for (auto& slot : slots) records.push_back(std::move(*slot));
  return records;
}

}  // namespace cdesign
