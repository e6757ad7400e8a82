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

#include "safeflow/oracle.h"

#include <algorithm>
#include <functional>

#include "json.hpp"
#include "safeflow/errors.h"
#include "safeflow/rounding.h"

namespace safeflow {

PathEnumeration enumerate_simple_paths(const Instance& instance, int source,
                                       int target, std::size_t limit) {
  PathEnumeration out;
  const auto adj = out_edges(instance);
  std::vector<bool> on_path(instance.node_count, false);
  Path current;
  current.nodes.push_back(source);
  on_path[source] = true;

  std::function<bool(int)> dfs = [&](int v) {
    if (v == target) {
      if (out.paths.size() == limit) {
        out.truncated = true;
        return false;
      }
      out.paths.push_back(current);
      return true;
    }
    for (int e : adj[v]) {
      const int w = instance.edges[e].to;
      if (on_path[w]) continue;
      on_path[w] = true;
      current.nodes.push_back(w);
      current.edges.push_back(e);
      const bool keep_going = dfs(w);
      current.nodes.pop_back();
      current.edges.pop_back();
      on_path[w] = false;
      if (!keep_going) return false;
    }
    return true;
  };
  dfs(source);
  return out;
}

AssignmentSearch find_path_assignment(
    const Instance& instance, const std::vector<double>& capacities,
    const std::vector<std::vector<Path>>& candidates) {
  AssignmentSearch search;
  const int k = static_cast<int>(candidates.size());
  std::vector<double> residual = capacities;
  std::vector<int> choice(k, -1);

  std::function<bool(int)> place = [&](int i) {
    if (i == k) return true;
    const double v = instance.demands[i].value;
    for (std::size_t p = 0; p < candidates[i].size(); ++p) {
      ++search.nodes_explored;
      const Path& path = candidates[i][p];
      const bool fits = std::all_of(
          path.edges.begin(), path.edges.end(),
          [&](int e) { return v <= residual[e] + kCheckTolerance; });
      if (!fits) continue;
      for (int e : path.edges) residual[e] -= v;
      choice[i] = static_cast<int>(p);
      if (place(i + 1)) return true;
      for (int e : path.edges) residual[e] += v;
    }
    return false;
  };

  if (place(0)) {
    search.found = true;
    for (int i = 0; i < k; ++i) search.witness.push_back(candidates[i][choice[i]]);
  }
  return search;
}

OracleVerdict exact_feasibility(const Instance& instance,
                                const std::vector<double>& shrunk_capacities,
                                const OracleLimits& limits) {
  if (instance.node_count > limits.max_nodes) {
    throw OracleTooLargeError("oracle limited to " +
                              std::to_string(limits.max_nodes) + " nodes");
  }
  if (instance.demand_count() > limits.max_commodities) {
    throw OracleTooLargeError("oracle limited to " +
                              std::to_string(limits.max_commodities) +
                              " commodities");
  }
  OracleVerdict verdict;
  std::vector<std::vector<Path>> candidates;
  double product = 1.0;
  for (const Demand& d : instance.demands) {
    PathEnumeration paths = enumerate_simple_paths(
        instance, d.source, d.target, limits.max_paths_per_commodity);
    if (paths.truncated) {
      throw OracleTooLargeError("demand " + std::to_string(d.id) +
                                ": more than " +
                                std::to_string(limits.max_paths_per_commodity) +
                                " simple paths");
    }
    verdict.paths_enumerated += paths.paths.size();
    product *= static_cast<double>(paths.paths.size());
    candidates.push_back(std::move(paths.paths));
  }
  if (product > limits.max_assignments) {
    throw OracleTooLargeError("path assignment space too large");
  }

  AssignmentSearch safe =
      find_path_assignment(instance, shrunk_capacities, candidates);
  if (safe.found) {
    verdict.safe_exists = true;
    verdict.feasible_exists = true;
    verdict.witness = std::move(safe.witness);
    return verdict;
  }
  std::vector<double> capacities;
  for (const Edge& e : instance.edges) capacities.push_back(e.capacity);
  AssignmentSearch feasible =
      find_path_assignment(instance, capacities, candidates);
  verdict.feasible_exists = feasible.found;
  if (feasible.found) verdict.witness = std::move(feasible.witness);
  return verdict;
}

std::vector<double> exact_walk_distribution(const FlowSolution& flow,
                                            const Instance& instance,
                                            int commodity) {
  const Demand& d = instance.demands[commodity];
  const auto& x = flow.flow[commodity];
  const int n = instance.node_count;
  const auto adj = out_edges(instance);

  // Kahn's algorithm on the support subgraph.
  std::vector<int> indegree(n, 0);
  for (const Edge& e : instance.edges) {
    if (in_support(x[e.id], d.value)) ++indegree[e.to];
  }
  std::vector<int> order;
  for (int v = 0; v < n; ++v) {
    if (indegree[v] == 0) order.push_back(v);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (int e : adj[order[head]]) {
      if (!in_support(x[e], d.value)) continue;
      if (--indegree[instance.edges[e].to] == 0) {
        order.push_back(instance.edges[e].to);
      }
    }
  }
  if (static_cast<int>(order.size()) != n) throw CyclicSupportError(commodity);

  std::vector<double> visit(n, 0.0);
  std::vector<double> usage(instance.edge_count(), 0.0);
  visit[d.source] = 1.0;
  for (int v : order) {
    if (v == d.target || visit[v] == 0.0) continue;
    double outflow = 0.0;
    for (int e : adj[v]) {
      if (in_support(x[e], d.value)) outflow += x[e];
    }
    if (outflow == 0.0) continue;
    for (int e : adj[v]) {
      if (!in_support(x[e], d.value)) continue;
      usage[e] = visit[v] * x[e] / outflow;
      visit[instance.edges[e].to] += usage[e];
    }
  }
  return usage;
}

std::string verdict_to_json(const OracleVerdict& verdict) {
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  doc["feasible_exists"] = verdict.feasible_exists;
  doc["safe_exists"] = verdict.safe_exists;
  doc["paths_enumerated"] = verdict.paths_enumerated;
  if (verdict.witness) {
    auto& nodes = doc["witness"] = nlohmann::ordered_json::array();
    auto& edges = doc["witness_edges"] = nlohmann::ordered_json::array();
    for (const Path& p : *verdict.witness) {
      nodes.push_back(p.nodes);
      edges.push_back(p.edges);
    }
  } else {
    doc["witness"] = nullptr;
    doc["witness_edges"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

}  // namespace safeflow
