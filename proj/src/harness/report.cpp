#include <algorithm>

#include "cdesign/harness.hpp"
#include "cdesign/tuner.hpp"

namespace cdesign {

nlohmann::ordered_json run_manifest(const std::vector<RunRecord>& records, const ReportOptions& options) {
  using nlohmann::ordered_json;
  ordered_json rows = ordered_json::array();
  std::vector<double> solved_times;
  std::size_t verified = 0;

  for (const auto& r : records) {
    ordered_json row;
    row["family"] = std::string(to_string(r.instance.family()));
    ordered_json params = ordered_json::object();
    for (const auto& p : r.instance.params()) params[p.name] = p.value;
    row["params"] = std::move(params);
    row["algorithm"] = r.algorithm;
    row["assignment"] = to_json(r.assignment);
    row["seed"] = r.seed;
    row["status"] = status_label(r);
    if (options.include_timing) row["elapsed_s"] = r.elapsed_s;
    row["iterations"] = r.iterations;
    row["verified"] = r.verified;
    if (!r.detail.empty()) row["detail"] = r.detail;
    if (r.verified && r.solution) row["solution"] = format_matrix(*r.solution);
    rows.push_back(std::move(row));

    if (r.verified) {
      ++verified;
      solved_times.push_back(r.elapsed_s);
    }
  }

  ordered_json summary;
  summary["runs"] = records.size();
  summary["verified"] = verified;
  summary["solve_rate"] =
      records.empty() ? std::string("n/a") : std::to_string(verified) + "/" + std::to_string(records.size());
  if (options.include_timing) {
    if (solved_times.empty()) {
      summary["median_elapsed_s"] = nullptr;
    } else {
      std::sort(solved_times.begin(), solved_times.end());
      const std::size_t n = solved_times.size();
      summary["median_elapsed_s"] =
          n % 2 ? solved_times[n / 2] : (solved_times[n / 2 - 1] + solved_times[n / 2]) / 2.0;
    }
    if (options.maxtime) summary["score"] = scoring(records, *options.maxtime);
  }

  ordered_json doc;
  doc["records"] = std::move(rows);
  doc["summary"] = std::move(summary);
  return doc;
}

}  // namespace cdesign
