// Copyright 2026 The Safeflow Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "safeflow/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "fmt/format.h"
#include "json.hpp"
#include "safeflow/errors.h"
#include "safeflow/instance.h"
#include "safeflow/margin.h"
#include "safeflow/mcmf.h"
#include "safeflow/oracle.h"
#include "safeflow/rounding.h"

namespace safeflow {
namespace {

constexpr const char* kSeedEnv = "SAFEFLOW_SEED";

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kSeedEnv); env && *env) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (*end != '\0') {
      throw Error(std::string(kSeedEnv) + " is not an unsigned integer");
    }
    return value;
  }
  return 0;
}

void write_text(const std::string& text, const std::string& path,
                std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open " + path + " for writing");
  file << text;
  if (!file) throw Error("write failed: " + path);
}

Instance load_valid(const std::string& path) {
  Instance instance = read_instance(path);
  const ValidationResult v = validate(instance, DemandBound::kAnyPositive);
  if (!v.ok()) throw InvalidInstanceError(v.violations.front().to_string());
  return instance;
}

struct SolveArgs {
  std::string instance;
  int trials = 20;
  std::optional<std::uint64_t> seed;
  double rho_floor = 0.0;
  std::string dump_flow;
  std::string out;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Instance instance = load_valid(a.instance);
  const RoundingReport report =
      solve(instance, {a.trials, resolve_seed(a.seed), a.rho_floor});
  if (!a.dump_flow.empty() && report.flow) {
    std::ofstream file(a.dump_flow, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot open " + a.dump_flow + " for writing");
    write_flow_csv(*report.flow, file);
  }
  write_text(report_to_json(report), a.out, out);
  switch (report.verdict) {
    case Verdict::kFound:
      return kExitOk;
    case Verdict::kNoSafeSolution:
      err << "no safe solution exists\n";
      return kExitNoSafeSolution;
    case Verdict::kNotFound:
      err << "no solution is found after " << report.trials_run
          << " trials\n";
      return kExitNotFound;
  }
  return kExitError;
}

int cmd_bound(const std::string& path, std::ostream& out) {
  const Instance instance = normalize(load_valid(path)).instance;
  const int m = instance.edge_count();
  out << "# safeflow bound v1\n";
  out << "kind,edge,capacity,rho,shrunk_capacity,trials,failure_bound,note\n";
  for (const Edge& e : instance.edges) {
    const double r = rho(e.capacity, m);
    if (r > 0.0) {
      out << fmt::format("edge,{},{},{},{},,,\n", e.id, e.capacity, r,
                         r * e.capacity);
    } else {
      out << fmt::format("edge,{},{},{},,,,margin undefined\n", e.id,
                         e.capacity, r);
    }
  }
  for (int trials : {1, 10, 20}) {
    out << fmt::format("theorem,,,,,{},{},\n", trials, failure_bound(trials));
  }
  return kExitOk;
}

struct GenArgs {
  GeneratorParams params;
  std::vector<double> cap_range{20.0, 40.0};
  std::vector<double> cost_range{1.0, 10.0};
  std::vector<double> demand_range{0.1, 1.0};
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_gen(GenArgs a, std::ostream& out) {
  a.params.capacity = {a.cap_range[0], a.cap_range[1]};
  a.params.cost = {a.cost_range[0], a.cost_range[1]};
  a.params.demand = {a.demand_range[0], a.demand_range[1]};
  a.params.seed = resolve_seed(a.seed);
  const Instance instance = generate_random(a.params);
  write_text(to_json(instance), a.out, out);
  return kExitOk;
}

struct StatsArgs {
  std::string instance;
  long roundings = 10000;
  std::optional<std::uint64_t> seed;
  double rho_floor = 0.0;
};

int cmd_stats(const StatsArgs& a, std::ostream& out, std::ostream& err) {
  if (a.roundings < 1) throw Error("--roundings must be >= 1");
  const Instance instance = normalize(load_valid(a.instance)).instance;
  const SafetyParams safety = safety_params(instance, a.rho_floor);
  const std::optional<FlowSolution> flow = relax(instance, safety);
  if (!flow) {
    err << "no safe solution exists\n";
    return kExitNoSafeSolution;
  }
  const std::uint64_t seed = resolve_seed(a.seed);
  const WalkSampler sampler(*flow, instance);
  const int m = instance.edge_count();
  // Welford accumulators per edge.
  std::vector<double> mean(m, 0.0), m2(m, 0.0), peak(m, 0.0);
  for (long t = 1; t <= a.roundings; ++t) {
    const PathSystem system = round_paths(sampler, instance, seed, t);
    for (int j = 0; j < m; ++j) {
      const double x = system.edge_load[j];
      const double d = x - mean[j];
      mean[j] += d / static_cast<double>(t);
      m2[j] += d * (x - mean[j]);
      peak[j] = std::max(peak[j], x);
    }
  }
  out << "# safeflow stats v1\n";
  out << "edge,flow,mean_load,std_load,max_load\n";
  for (int j = 0; j < m; ++j) {
    const double var =
        a.roundings > 1 ? m2[j] / static_cast<double>(a.roundings - 1) : 0.0;
    out << fmt::format("{},{},{},{},{}\n", j, flow->aggregate[j], mean[j],
                       std::sqrt(std::max(0.0, var)), peak[j]);
  }
  return kExitOk;
}

int cmd_check(const std::string& path, bool oracle, double rho_floor,
              std::ostream& out) {
  const Instance raw = read_instance(path);
  const ValidationResult v = validate(raw, DemandBound::kAnyPositive);
  if (!oracle || !v.ok()) {
    nlohmann::ordered_json doc;
    doc["version"] = 1;
    doc["valid"] = v.ok();
    doc["violations"] = nlohmann::ordered_json::array();
    for (const Violation& violation : v.violations) {
      doc["violations"].push_back(violation.to_string());
    }
    out << doc.dump(2) << "\n";
    return v.ok() ? kExitOk : kExitError;
  }
  const Instance instance = normalize(raw).instance;
  const SafetyParams safety = safety_params(instance, rho_floor);
  out << verdict_to_json(exact_feasibility(instance, safety.shrunk_capacity));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Unsplittable flow via safety margins and randomized rounding",
               "safeflow"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Route every demand on a single path");
  solve_cmd->add_option("instance", solve_args.instance, "Instance JSON file")->required();
  solve_cmd->add_option("--trials,-r", solve_args.trials, "Maximum rounding trials")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", solve_args.seed, "Random seed (default: $SAFEFLOW_SEED or 0)");
  solve_cmd->add_option("--rho-floor", solve_args.rho_floor, "Reject edges with margin <= floor");
  solve_cmd->add_option("--dump-flow", solve_args.dump_flow, "Write the relaxation flow as CSV");
  solve_cmd->add_option("--out", solve_args.out, "Write the report here instead of stdout");

  std::string bound_path;
  auto* bound_cmd = app.add_subcommand("bound", "Print safety margins and trial failure bounds");
  bound_cmd->add_option("instance", bound_path, "Instance JSON file")->required();

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--nodes", gen_args.params.nodes, "Node count");
  gen_cmd->add_option("--edge-prob", gen_args.params.edge_prob, "Edge probability");
  gen_cmd->add_option("--k", gen_args.params.commodities, "Commodity count");
  gen_cmd->add_option("--cap-range", gen_args.cap_range, "Capacity range lo,hi")
      ->delimiter(',')->expected(2);
  gen_cmd->add_option("--cost-range", gen_args.cost_range, "Cost range lo,hi")
      ->delimiter(',')->expected(2);
  gen_cmd->add_option("--demand-range", gen_args.demand_range, "Demand range lo,hi")
      ->delimiter(',')->expected(2);
  gen_cmd->add_option("--seed", gen_args.seed, "Random seed (default: $SAFEFLOW_SEED or 0)");
  gen_cmd->add_option("--out", gen_args.out, "Output file (default stdout)");

  StatsArgs stats_args;
  auto* stats_cmd = app.add_subcommand("stats", "Empirical rounded loads against relaxation flow");
  stats_cmd->add_option("instance", stats_args.instance, "Instance JSON file")->required();
  stats_cmd->add_option("--roundings", stats_args.roundings, "Number of roundings");
  stats_cmd->add_option("--seed", stats_args.seed, "Random seed (default: $SAFEFLOW_SEED or 0)");
  stats_cmd->add_option("--rho-floor", stats_args.rho_floor, "Reject edges with margin <= floor");

  std::string check_path;
  bool check_oracle = false;
  double check_floor = 0.0;
  auto* check_cmd = app.add_subcommand("check", "Validate an instance, optionally run the exact oracle");
  check_cmd->add_option("instance", check_path, "Instance JSON file")->required();
  check_cmd->add_flag("--oracle", check_oracle, "Decide feasible/safe existence by enumeration");
  check_cmd->add_option("--rho-floor", check_floor, "Margin floor for the safe capacities");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args, out, err);
    if (*bound_cmd) return cmd_bound(bound_path, out);
    if (*gen_cmd) return cmd_gen(gen_args, out);
    if (*stats_cmd) return cmd_stats(stats_args, out, err);
    if (*check_cmd) return cmd_check(check_path, check_oracle, check_floor, out);
  } catch (const CapacityTooSmallError& e) {
    err << "capacity too small: " << e.what() << "\n";
    return kExitCapacityTooSmall;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace safeflow
