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

#include "support/flow_checks.h"

#include <cmath>
#include <limits>
#include <sstream>

namespace safeflow::testing {

std::string flow_invariant_violations(const FlowSolution& flow,
                                      const Instance& instance,
                                      const std::vector<double>& capacities,
                                      double tolerance) {
  std::ostringstream out;
  const int n = instance.node_count;
  const int m = instance.edge_count();
  std::vector<double> aggregate(m, 0.0);
  for (int i = 0; i < instance.demand_count(); ++i) {
    const Demand& d = instance.demands[i];
    std::vector<double> net(n, 0.0);  // outflow - inflow
    for (const Edge& e : instance.edges) {
      const double x = flow.flow[i][e.id];
      if (x < 0.0) out << "negative flow c" << i << " e" << e.id << "; ";
      net[e.from] += x;
      net[e.to] -= x;
      aggregate[e.id] += x;
    }
    for (int v = 0; v < n; ++v) {
      const double want =
          v == d.source ? d.value : (v == d.target ? -d.value : 0.0);
      if (std::fabs(net[v] - want) > tolerance) {
        out << "balance c" << i << " v" << v << " " << net[v] << "; ";
      }
    }
    if (!support_topologically_sortable(flow, instance, i)) {
      out << "cyclic support c" << i << "; ";
    }
  }
  for (int j = 0; j < m; ++j) {
    if (aggregate[j] > capacities[j] + tolerance) {
      out << "capacity e" << j << " " << aggregate[j] << " > " << capacities[j]
          << "; ";
    }
    if (std::fabs(aggregate[j] - flow.aggregate[j]) > 1e-9) {
      out << "stale aggregate e" << j << "; ";
    }
  }
  return out.str();
}

bool support_topologically_sortable(const FlowSolution& flow,
                                    const Instance& instance, int commodity) {
  const int n = instance.node_count;
  const double v = instance.demands[commodity].value;
  std::vector<int> indegree(n, 0);
  for (const Edge& e : instance.edges) {
    if (flow.flow[commodity][e.id] > 1e-9 * v) ++indegree[e.to];
  }
  std::vector<int> ready;
  for (int u = 0; u < n; ++u) {
    if (indegree[u] == 0) ready.push_back(u);
  }
  int removed = 0;
  while (!ready.empty()) {
    const int u = ready.back();
    ready.pop_back();
    ++removed;
    for (const Edge& e : instance.edges) {
      if (e.from == u && flow.flow[commodity][e.id] > 1e-9 * v &&
          --indegree[e.to] == 0) {
        ready.push_back(e.to);
      }
    }
  }
  return removed == n;
}

std::vector<double> decompose_commodity(const FlowSolution& flow,
                                        const Instance& instance,
                                        int commodity) {
  const Demand& d = instance.demands[commodity];
  std::vector<double> x = flow.flow[commodity];
  const double eps = 1e-9 * d.value;
  std::vector<double> values;
  for (int guard = 0; guard <= instance.edge_count(); ++guard) {
    std::vector<int> path;
    int v = d.source;
    while (v != d.target) {
      int pick = -1;
      for (const Edge& e : instance.edges) {
        if (e.from == v && x[e.id] > eps) {
          pick = e.id;
          break;
        }
      }
      if (pick < 0) break;
      path.push_back(pick);
      v = instance.edges[pick].to;
      if (path.size() > static_cast<std::size_t>(instance.node_count)) break;
    }
    if (v != d.target || path.empty()) break;
    double amount = std::numeric_limits<double>::infinity();
    for (int e : path) amount = std::min(amount, x[e]);
    for (int e : path) x[e] -= amount;
    values.push_back(amount);
  }
  return values;
}

bool no_improving_residual_cycle(const FlowSolution& flow,
                                 const Instance& instance,
                                 const std::vector<double>& capacities,
                                 int commodity, double tolerance) {
  const int n = instance.node_count;
  struct Arc {
    int from, to;
    double cost;
  };
  std::vector<Arc> arcs;
  for (const Edge& e : instance.edges) {
    if (capacities[e.id] - flow.aggregate[e.id] > tolerance) {
      arcs.push_back({e.from, e.to, e.cost});
    }
    if (flow.flow[commodity][e.id] > tolerance) {
      arcs.push_back({e.to, e.from, -e.cost});
    }
  }
  // Bellman-Ford from a virtual root connected to every node.
  std::vector<double> dist(n, 0.0);
  for (int round = 0; round < n; ++round) {
    bool relaxed = false;
    for (const Arc& a : arcs) {
      if (dist[a.from] + a.cost < dist[a.to] - tolerance) {
        dist[a.to] = dist[a.from] + a.cost;
        relaxed = true;
      }
    }
    if (!relaxed) return true;
  }
  return false;
}

}  // namespace safeflow::testing
