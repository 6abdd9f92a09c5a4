#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cdesign/designs.hpp"
#include "cdesign/hyperparams.hpp"

namespace cdesign {

enum class RunStatus {
  Solved,      // the solver claimed a solution (see RunRecord::verified)
  Timeout,     // budget ran out
  Infeasible,  // search tree exhausted without a solution
  Error,       // the solver threw
};

/// One (instance, seed) execution of an algorithm.
///
/// verified implies status == Solved and that the harness's own call to the
/// verifier accepted `solution`. A Solved record with verified == false is
/// a rejected claim.
struct RunRecord {
  InstanceSpec instance;
  std::string algorithm;
  Assignment assignment;
  std::uint64_t seed = 0;
  RunStatus status = RunStatus::Error;
  std::optional<DesignMatrix> solution;
  double elapsed_s = 0;
  std::uint64_t iterations = 0;
  /// Error kind when status == Error; verifier finding for rejected claims.
  std::string detail;
  bool verified = false;
};

/// "solved", "rejected", "timeout", "infeasible", "error".
std::string status_label(const RunRecord& r);

}  // namespace cdesign
