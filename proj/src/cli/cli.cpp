#include "cdesign/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdesign/designs.hpp"
#include "cdesign/errors.hpp"
#include "cdesign/harness.hpp"
#include "cdesign/manifest.hpp"
#include "cdesign/tuner.hpp"

namespace cdesign {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Options {
  std::string format = "text";
  std::string family;
  std::string params;
  std::string input;
  std::string algorithm;
  std::string hyper;
  std::uint64_t seed = 1;
  std::optional<double> time_s;
  std::optional<std::uint64_t> iters;
  std::string output;
  std::string manifest;
  std::string profile = "desk";
  std::optional<int> grid_size;
  std::optional<double> init_time;
  std::optional<int> scale;
  int seeds = 2;
  int parallelism = 0;
  std::string report;
  std::string dir;
};

bool json_mode(const Options& o) { return o.format == "json"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

ordered_json violation_json(const Violation& v) {
  ordered_json j;
  j["kind"] = std::string(to_string(v.kind));
  j["indices"] = v.indices;
  j["message"] = v.describe();
  return j;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto spec = InstanceSpec::parse(parse_family(o.family), o.params);
  const auto matrix = load_matrix_file(o.input);

  VerificationReport report;
  std::string shape_error;
  try {
    report = verify(spec, matrix);
  } catch (const StructuralError& e) {
    report.valid = false;
    report.violation_count = 1;
    shape_error = e.what();
  }

  if (json_mode(o)) {
    ordered_json j;
    j["instance"] = spec.label();
    j["valid"] = report.valid;
    if (report.violation) {
      j["violation"] = violation_json(*report.violation);
    } else if (!shape_error.empty()) {
      j["violation"] = {{"kind", "Shape"}, {"indices", ordered_json::array()}, {"message", shape_error}};
    } else {
      j["violation"] = nullptr;
    }
    j["violation_count"] = report.violation_count;
    out << j.dump(2) << '\n';
  } else if (report.valid) {
    out << spec.label() << ": valid\n";
  } else {
    out << spec.label() << ": invalid: " << (report.violation ? report.violation->describe() : shape_error);
    if (report.violation_count > 1) out << " (" << report.violation_count << " violations)";
    out << '\n';
  }
  return report.valid ? kExitOk : kExitInvalid;
}

Budget budget_from(const Options& o) {
  if (o.iters) return Budget::iterations(*o.iters);
  return Budget::wall_clock(o.time_s.value_or(60.0));
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const auto spec = InstanceSpec::parse(parse_family(o.family), o.params);
  const Algorithm& algorithm = find_algorithm(o.algorithm);
  const auto assignment = make_assignment(algorithm.hyperparameters, o.hyper);

  BatchPlan plan;
  plan.instances = {spec};
  plan.seeds_per_instance = 1;
  plan.budget = budget_from(o);
  plan.parallelism = 1;
  plan.seed_base = o.seed;
  const auto records = exec_batch(plan, algorithm, assignment);
  const RunRecord& r = records.front();

  if (r.verified && !o.output.empty()) write_file(o.output, format_matrix(*r.solution));
  if (json_mode(o)) {
    out << run_manifest(records).dump(2) << '\n';
  } else if (r.verified) {
    out << format_matrix(*r.solution);
  }

  switch (r.status) {
    case RunStatus::Solved:
      if (r.verified) {
        err << spec.label() << " solved by " << algorithm.name << " (seed " << r.seed << ", " << r.iterations
            << " iterations, " << r.elapsed_s << " s)\n";
        return kExitOk;
      }
      err << "solver output rejected by the verifier: " << r.detail << '\n';
      return kExitInvalid;
    case RunStatus::Infeasible:
      err << "exhausted search tree: " << spec.label() << " has no solution\n";
      return kExitUnsolved;
    case RunStatus::Timeout:
      err << "no solution within budget (" << r.iterations << " iterations)\n";
      return kExitUnsolved;
    case RunStatus::Error:
      break;
  }
  err << "run failed: " << r.detail << '\n';
  return kExitUsage;
}

int cmd_tune(const Options& o, std::ostream& out, std::ostream& err) {
  const Family family = parse_family(o.family);
  const Algorithm& algorithm = find_algorithm(o.algorithm);
  if (!algorithm.supports(family)) {
    throw ConfigError("algorithm '" + algorithm.name + "' does not handle " + std::string(to_string(family)));
  }
  if (o.seeds < 1) throw ConfigError("--seeds must be at least 1");

  const auto entries = load_manifest_file(o.manifest);
  if (entries.empty()) throw ConfigError("manifest '" + o.manifest + "' lists no instances");
  // Each manifest line contributes one slot per seed, so a single batch
  // covers them all and every run still gets its own seed.
  std::vector<InstanceSpec> slots;
  for (const auto& e : entries) {
    if (e.instance.family() != family) {
      throw ConfigError("manifest instance " + e.instance.label() + " is not of family " +
                        std::string(to_string(family)));
    }
    const int seeds = e.seeds.value_or(o.seeds);
    if (seeds < 1) throw ConfigError(e.instance.label() + ": seeds must be at least 1");
    for (int s = 0; s < seeds; ++s) slots.push_back(e.instance);
  }

  TuneProfile profile;
  if (o.profile == "desk") {
    profile = TuneProfile::desk();
  } else if (o.profile == "full") {
    profile = TuneProfile::full();
  } else {
    throw ConfigError("unknown profile '" + o.profile + "' (desk or full)");
  }
  if (o.grid_size) profile.gridsize = *o.grid_size;
  if (o.init_time) profile.init_runtime = *o.init_time;
  if (o.scale) profile.scale = *o.scale;
  const int parallelism = o.parallelism > 0 ? o.parallelism : default_parallelism();

  const TuneRunner runner = [&](const Assignment& a, double budget_s) {
    BatchPlan plan;
    plan.instances = slots;
    plan.seeds_per_instance = 1;
    plan.budget = Budget::wall_clock(budget_s);
    plan.parallelism = parallelism;
    plan.seed_base = o.seed;
    return exec_batch(plan, algorithm, a);
  };
  const auto result = hyper_tune(runner, algorithm.hyperparameters, profile);
  const auto report = tune_report(result);
  if (!o.report.empty()) write_file(o.report, report.dump(2) + "\n");

  if (json_mode(o)) {
    out << report.dump(2) << '\n';
  } else {
    out << "best: " << (result.best.assignment.empty() ? "(no hyperparameters)" : result.best.assignment.to_string())
        << " score=" << result.best.score << '\n';
    for (std::size_t i = 0; i < result.rounds.size(); ++i) {
      out << "round " << i + 1 << ": " << result.rounds[i].entries.size() << " assignments at "
          << result.rounds[i].budget_s << " s\n";
    }
  }
  err << "tuned " << algorithm.name << " on " << slots.size() << " runs per assignment\n";
  return kExitOk;
}

std::map<std::string, std::string> read_checksums(const fs::path& path) {
  std::map<std::string, std::string> sums;
  std::istringstream in(read_file(path.string()));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string digest;
    std::string name;
    if (!(fields >> digest >> name)) throw ParseError(lineno, "CHECKSUMS: expected '<digest>  <file>'");
    sums[name] = digest;
  }
  return sums;
}

std::string hex16(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int cmd_fixtures(const Options& o, std::ostream& out, std::ostream& err) {
  const fs::path dir(o.dir);
  if (!fs::is_directory(dir)) throw ParseError(0, "'" + o.dir + "' is not a directory");
  const fs::path manifest_path = dir / "manifest.json";
  if (!fs::exists(manifest_path)) throw ParseError(0, "no manifest.json in '" + o.dir + "'");
  const auto entries = load_manifest_file(manifest_path.string());
  if (entries.empty()) throw ParseError(0, "fixture manifest lists nothing");
  std::optional<std::map<std::string, std::string>> sums;
  if (fs::exists(dir / "CHECKSUMS")) sums = read_checksums(dir / "CHECKSUMS");

  ordered_json rows = ordered_json::array();
  int passed = 0;
  int failed = 0;
  int broken = 0;
  for (const auto& e : entries) {
    const std::string file = e.file.value_or("");
    std::string status = "pass";
    std::string detail;
    if (file.empty()) {
      status = "error";
      detail = "manifest entry has no file";
    } else {
      try {
        const std::string bytes = read_file((dir / file).string());
        const auto matrix = parse_matrix(bytes);
        const auto report = verify(e.instance, matrix);
        if (!report.valid) {
          status = "fail";
          detail = report.violation->describe();
        } else if (sums) {
          const auto it = sums->find(file);
          if (it == sums->end()) {
            status = "fail";
            detail = "no checksum listed";
          } else if (it->second != hex16(fnv1a64(bytes))) {
            status = "fail";
            detail = "checksum mismatch";
          }
        }
      } catch (const ParseError& ex) {
        status = "error";
        detail = ex.what();
      } catch (const StructuralError& ex) {
        status = "fail";
        detail = ex.what();
      }
    }
    if (status == "pass") {
      ++passed;
    } else if (status == "fail") {
      ++failed;
    } else {
      ++broken;
    }

    if (json_mode(o)) {
      ordered_json row;
      row["file"] = file;
      row["instance"] = e.instance.label();
      row["status"] = status;
      if (!detail.empty()) row["detail"] = detail;
      rows.push_back(std::move(row));
    } else {
      out << (status == "pass" ? "PASS" : status == "fail" ? "FAIL" : "ERROR") << "  " << file << "  "
          << e.instance.label();
      if (!detail.empty()) out << "  " << detail;
      out << '\n';
    }
  }

  if (json_mode(o)) {
    ordered_json doc;
    doc["fixtures"] = std::move(rows);
    doc["passed"] = passed;
    doc["total"] = entries.size();
    out << doc.dump(2) << '\n';
  }
  err << passed << "/" << entries.size() << " fixtures pass\n";
  if (broken > 0) return kExitUsage;
  return failed > 0 ? kExitInvalid : kExitOk;
}

void add_budget_flags(CLI::App* cmd, Options& o) {
  auto* t = cmd->add_option("--time", o.time_s, "Wall-clock budget in seconds (default 60)")->check(
      CLI::NonNegativeNumber);
  auto* i = cmd->add_option("--iters", o.iters, "Iteration budget");
  t->excludes(i);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Search and verification tools for combinatorial designs", "cdesign"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  const auto format_flag = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output mode")->check(CLI::IsMember({"text", "json"}));
  };

  auto* verify_cmd = app.add_subcommand("verify", "Check a matrix file against an instance");
  verify_cmd->add_option("--family", o.family, "PA, SymmW, SkewW, BTD, FR, EPA")->required();
  verify_cmd->add_option("--params", o.params, "Instance parameters, e.g. n=12,d=8,m=21")->required();
  verify_cmd->add_option("--input", o.input, "Matrix file")->required();
  format_flag(verify_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "Search for a design");
  solve_cmd->add_option("--family", o.family, "PA, SymmW, SkewW, BTD, FR, EPA")->required();
  solve_cmd->add_option("--params", o.params, "Instance parameters")->required();
  solve_cmd->add_option("--algorithm", o.algorithm, "sa-const, sa-reset, local-search, ga, dfs")->required();
  solve_cmd->add_option("--seed", o.seed, "Random seed");
  solve_cmd->add_option("--hyper", o.hyper, "Hyperparameter overrides, e.g. T=0.444444");
  solve_cmd->add_option("--output", o.output, "Also write the solution here");
  add_budget_flags(solve_cmd, o);
  format_flag(solve_cmd);

  auto* tune_cmd = app.add_subcommand("tune", "Grid-tune an algorithm on development instances");
  tune_cmd->add_option("--family", o.family, "Family of the development instances")->required();
  tune_cmd->add_option("--algorithm", o.algorithm, "Algorithm to tune")->required();
  tune_cmd->add_option("--manifest", o.manifest, "JSON list of development instances")->required();
  tune_cmd->add_option("--profile", o.profile, "desk (grid 100, 0.1 s) or full (grid 1000, 0.5 s)");
  tune_cmd->add_option("--grid-size", o.grid_size, "Initial grid size");
  tune_cmd->add_option("--init-time", o.init_time, "First-round budget per run, seconds");
  tune_cmd->add_option("--scale", o.scale, "Survivor fraction and budget growth per round");
  tune_cmd->add_option("--seeds", o.seeds, "Seeds per instance when the manifest gives none");
  tune_cmd->add_option("--seed", o.seed, "First seed");
  tune_cmd->add_option("--parallelism", o.parallelism,
                       "Concurrent runs (default: CDESIGN_PARALLELISM or the CPU count)");
  tune_cmd->add_option("--report", o.report, "Write the per-round report (JSON) here");
  format_flag(tune_cmd);

  auto* fixtures_cmd = app.add_subcommand("fixtures", "Verify a directory of reference matrices");
  fixtures_cmd->add_option("dir", o.dir, "Directory with manifest.json")->required();
  format_flag(fixtures_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (solve_cmd->parsed()) return cmd_solve(o, out, err);
    if (tune_cmd->parsed()) return cmd_tune(o, out, err);
    if (fixtures_cmd->parsed()) return cmd_fixtures(o, out, err);
  } catch (const std::exception& e) {
    if (json_mode(o)) out << ordered_json{{"error", e.what()}, {"exit_code", kExitUsage}}.dump(2) << '\n';
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace cdesign
