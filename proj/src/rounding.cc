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

#include "safeflow/rounding.h"

#include <algorithm>
#include <string>

#include "json.hpp"
#include "safeflow/errors.h"

namespace safeflow {

std::vector<double> edge_loads(const std::vector<Path>& paths,
                               const Instance& instance) {
  std::vector<double> load(instance.edge_count(), 0.0);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (int e : paths[i].edges) load[e] += instance.demands[i].value;
  }
  return load;
}

bool check_feasible(const PathSystem& system, const Instance& instance) {
  const std::vector<double> load = edge_loads(system.paths, instance);
  for (int j = 0; j < instance.edge_count(); ++j) {
    if (load[j] > instance.edges[j].capacity + kCheckTolerance) return false;
  }
  return true;
}

bool is_valid_walk(const Path& path, const Instance& instance, int commodity,
                   const FlowSolution* flow) {
  const Demand& d = instance.demands[commodity];
  if (path.nodes.empty() || path.nodes.size() != path.edges.size() + 1) {
    return false;
  }
  if (path.nodes.front() != d.source || path.nodes.back() != d.target) {
    return false;
  }
  if (static_cast<int>(path.edges.size()) > instance.node_count - 1) {
    return false;
  }
  std::vector<bool> seen(instance.node_count, false);
  for (int v : path.nodes) {
    if (v < 0 || v >= instance.node_count || seen[v]) return false;
    seen[v] = true;
  }
  for (std::size_t s = 0; s < path.edges.size(); ++s) {
    const int e = path.edges[s];
    if (e < 0 || e >= instance.edge_count()) return false;
    const Edge& edge = instance.edges[e];
    if (edge.from != path.nodes[s] || edge.to != path.nodes[s + 1]) {
      return false;
    }
    if (flow && !in_support(flow->flow[commodity][e], d.value)) return false;
  }
  return true;
}

WalkSampler::WalkSampler(const FlowSolution& flow, const Instance& instance)
    : node_count_(instance.node_count) {
  const auto adj = out_edges(instance);
  const int k = instance.demand_count();
  terminals_.reserve(k);
  branches_.resize(k);
  for (int i = 0; i < k; ++i) {
    const Demand& d = instance.demands[i];
    terminals_.emplace_back(d.source, d.target);
    auto& table = branches_[i];
    table.resize(node_count_);
    for (int v = 0; v < node_count_; ++v) {
      double total = 0.0;
      for (int e : adj[v]) {
        const double x = flow.flow[i][e];
        if (!in_support(x, d.value)) continue;
        total += x;
        table[v].push_back({e, instance.edges[e].to, total});
      }
    }
  }
}

Path WalkSampler::walk(int commodity, Rng& rng) const {
  const auto [source, target] = terminals_[commodity];
  const auto& table = branches_[commodity];
  Path path;
  path.nodes.push_back(source);
  std::vector<bool> visited(node_count_, false);
  visited[source] = true;
  int v = source;
  while (v != target) {
    const auto& out = table[v];
    if (out.empty()) throw DeadEndError(commodity, v);
    const double u = rng.uniform01() * out.back().cumulative;
    auto it = std::upper_bound(
        out.begin(), out.end(), u,
        [](double value, const Branch& b) { return value < b.cumulative; });
    if (it == out.end()) --it;
    v = it->head;
    if (visited[v]) throw CyclicSupportError(commodity);
    visited[v] = true;
    path.nodes.push_back(v);
    path.edges.push_back(it->edge);
  }
  return path;
}

Path walk_one(const FlowSolution& flow, const Instance& instance,
              int commodity, Rng& rng) {
  return WalkSampler(flow, instance).walk(commodity, rng);
}

Rng commodity_stream(std::uint64_t seed, std::uint64_t trial, int commodity) {
  return Rng({seed, trial, static_cast<std::uint64_t>(commodity)});
}

PathSystem round_paths(const WalkSampler& sampler, const Instance& instance,
                       std::uint64_t seed, std::uint64_t trial) {
  PathSystem system;
  system.paths.reserve(sampler.commodity_count());
  for (int i = 0; i < sampler.commodity_count(); ++i) {
    Rng rng = commodity_stream(seed, trial, i);
    system.paths.push_back(sampler.walk(i, rng));
  }
  system.edge_load = edge_loads(system.paths, instance);
  system.feasible = check_feasible(system, instance);
  return system;
}

PathSystem round_paths(const FlowSolution& flow, const Instance& instance,
                       std::uint64_t seed, std::uint64_t trial) {
  return round_paths(WalkSampler(flow, instance), instance, seed, trial);
}

double overload_union_bound(const FlowSolution& flow,
                            const Instance& instance) {
  double sum = 0.0;
  for (int j = 0; j < instance.edge_count(); ++j) {
    const double f = flow.aggregate[j];
    if (f <= 0.0) continue;
    const double delta = std::max(0.0, instance.edges[j].capacity / f - 1.0);
    sum += chernoff_tail(delta, f);
  }
  return sum;
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kFound:
      return "found";
    case Verdict::kNoSafeSolution:
      return "no_safe_solution";
    case Verdict::kNotFound:
      return "not_found";
  }
  return "unknown";
}

RoundingReport solve(const Instance& input, const DriverConfig& config) {
  if (config.trials < 1) throw InvalidInstanceError("trial count must be >= 1");
  const ValidationResult validation = validate(input, DemandBound::kAnyPositive);
  if (!validation.ok()) {
    throw InvalidInstanceError(validation.violations.front().to_string());
  }
  const NormalizedInstance normalized = normalize(input);
  const Instance& instance = normalized.instance;

  RoundingReport report;
  report.scale = normalized.scale;
  report.theorem_bound = failure_bound(config.trials);
  report.capacity.reserve(instance.edge_count());
  for (const Edge& e : instance.edges) report.capacity.push_back(e.capacity);
  report.safety = safety_params(instance, config.rho_floor);

  report.lp_solves = 1;
  report.flow = relax(instance, report.safety);
  if (!report.flow) {
    report.verdict = Verdict::kNoSafeSolution;
    return report;
  }
  run_trials(instance, *report.flow, config, report);
  return report;
}

void run_trials(const Instance& normalized, const FlowSolution& flow,
                const DriverConfig& config, RoundingReport& report) {
  report.union_bound = overload_union_bound(flow, normalized);
  report.verdict = Verdict::kNotFound;
  report.found_trial = 0;
  report.paths.reset();
  report.trials_run = 0;
  report.dead_end_trials = 0;
  report.per_trial_feasible.clear();

  const WalkSampler sampler(flow, normalized);
  for (int trial = 1; trial <= config.trials; ++trial) {
    ++report.trials_run;
    PathSystem system;
    try {
      system = round_paths(sampler, normalized, config.seed, trial);
    } catch (const DeadEndError&) {
      ++report.dead_end_trials;
      report.per_trial_feasible.push_back(false);
      continue;
    }
    report.per_trial_feasible.push_back(system.feasible);
    if (system.feasible) {
      report.verdict = Verdict::kFound;
      report.found_trial = trial;
      report.paths = std::move(system);
      return;
    }
  }
}

std::string report_to_json(const RoundingReport& report) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["version"] = 1;
  doc["verdict"] = to_string(report.verdict);
  doc["trial"] = report.found_trial > 0 ? ordered_json(report.found_trial)
                                        : ordered_json(nullptr);
  doc["trials_run"] = report.trials_run;
  doc["per_trial_feasible"] = report.per_trial_feasible;
  doc["dead_end_trials"] = report.dead_end_trials;
  doc["theorem_bound"] = report.theorem_bound;
  doc["union_bound"] = report.flow ? ordered_json(report.union_bound)
                                   : ordered_json(nullptr);
  doc["scale"] = report.scale;
  doc["lp_solves"] = report.lp_solves;
  doc["total_cost"] = report.flow ? ordered_json(report.flow->total_cost)
                                  : ordered_json(nullptr);

  auto& edges = doc["edges"] = ordered_json::array();
  for (std::size_t j = 0; j < report.capacity.size(); ++j) {
    ordered_json row;
    row["edge"] = j;
    row["capacity"] = report.capacity[j];
    row["rho"] = report.safety.rho[j];
    row["shrunk_capacity"] = report.safety.shrunk_capacity[j];
    row["flow"] = report.flow ? ordered_json(report.flow->aggregate[j])
                              : ordered_json(nullptr);
    row["load"] = report.paths ? ordered_json(report.paths->edge_load[j])
                               : ordered_json(nullptr);
    edges.push_back(std::move(row));
  }
  auto& paths = doc["paths"] = ordered_json::array();
  auto& path_edges = doc["path_edges"] = ordered_json::array();
  if (report.paths) {
    for (const Path& p : report.paths->paths) {
      paths.push_back(p.nodes);
      path_edges.push_back(p.edges);
    }
  }
  return doc.dump(2) + "\n";
}

}  // namespace safeflow
