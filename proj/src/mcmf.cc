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

#include "safeflow/mcmf.h"

#include <algorithm>
#include <ostream>

#include "fmt/format.h"
#include "safeflow/errors.h"

namespace safeflow {
namespace {

// Finds a directed cycle in the support of commodity i and returns its edge
// ids in order, or an empty vector.
std::vector<int> find_support_cycle(const FlowSolution& solution,
                                    const Instance& instance, int i,
                                    const std::vector<std::vector<int>>& adj) {
  const double demand = instance.demands[i].value;
  const auto& x = solution.flow[i];
  const int n = instance.node_count;
  enum : char { kWhite, kGray, kBlack };
  std::vector<char> color(n, kWhite);
  std::vector<int> parent_edge(n, -1);
  std::vector<std::size_t> cursor(n, 0);
  for (int root = 0; root < n; ++root) {
    if (color[root] != kWhite) continue;
    std::vector<int> stack{root};
    color[root] = kGray;
    while (!stack.empty()) {
      const int v = stack.back();
      if (cursor[v] == adj[v].size()) {
        color[v] = kBlack;
        stack.pop_back();
        continue;
      }
      const int e = adj[v][cursor[v]++];
      if (!in_support(x[e], demand)) continue;
      const int w = instance.edges[e].to;
      if (color[w] == kGray) {
        std::vector<int> cycle{e};
        for (int u = v; u != w; u = instance.edges[parent_edge[u]].from) {
          cycle.push_back(parent_edge[u]);
        }
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (color[w] == kWhite) {
        color[w] = kGray;
        parent_edge[w] = e;
        stack.push_back(w);
      }
    }
  }
  return {};
}

}  // namespace

void refresh_totals(FlowSolution& solution, const Instance& instance) {
  const int m = instance.edge_count();
  solution.aggregate.assign(m, 0.0);
  solution.total_cost = 0.0;
  for (const auto& row : solution.flow) {
    for (int j = 0; j < m; ++j) solution.aggregate[j] += row[j];
  }
  for (int j = 0; j < m; ++j) {
    solution.total_cost += instance.edges[j].cost * solution.aggregate[j];
  }
}

LpModel build_lp(const Instance& instance, const SafetyParams& safety) {
  const int k = instance.demand_count();
  const int m = instance.edge_count();
  const int n = instance.node_count;
  LpModel model;
  model.commodities = k;
  model.edges = m;
  LinearProgram& lp = model.program;
  lp.num_vars = k * m;
  lp.objective.resize(lp.num_vars);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < m; ++j) {
      lp.objective[model.variable(i, j)] = instance.edges[j].cost;
    }
  }

  for (int i = 0; i < k; ++i) {
    const Demand& d = instance.demands[i];
    std::vector<LpRow> node_rows(n);
    for (const Edge& e : instance.edges) {
      node_rows[e.from].terms.emplace_back(model.variable(i, e.id), 1.0);
      node_rows[e.to].terms.emplace_back(model.variable(i, e.id), -1.0);
    }
    for (int v = 0; v < n; ++v) {
      if (v == d.target) continue;
      LpRow& row = node_rows[v];
      row.sense = RowSense::kEqual;
      row.rhs = v == d.source ? d.value : 0.0;
      if (row.terms.empty() && row.rhs == 0.0) continue;
      lp.rows.push_back(std::move(row));
    }
  }

  model.first_capacity_row = static_cast<int>(lp.rows.size());
  for (int j = 0; j < m; ++j) {
    LpRow row;
    row.sense = RowSense::kLessEqual;
    row.rhs = safety.shrunk_capacity[j];
    for (int i = 0; i < k; ++i) row.terms.emplace_back(model.variable(i, j), 1.0);
    lp.rows.push_back(std::move(row));
  }
  return model;
}

std::optional<FlowSolution> solve_lp(const LpModel& model,
                                     const Instance& instance) {
  SimplexOptions options;
  options.optimality_tol = kLpTolerance;
  options.feasibility_tol = kFeasibilityTolerance;
  const LpSolution lp = solve_simplex(model.program, options);
  switch (lp.status) {
    case LpStatus::kOptimal:
      break;
    case LpStatus::kInfeasible:
      return std::nullopt;
    case LpStatus::kIterationLimit:
      throw IterationLimitError(lp.iterations);
    case LpStatus::kUnbounded:
      throw Error("flow relaxation reported unbounded; costs must be positive");
  }
  FlowSolution out;
  out.flow.assign(model.commodities, std::vector<double>(model.edges, 0.0));
  for (int i = 0; i < model.commodities; ++i) {
    const double demand = instance.demands[i].value;
    for (int j = 0; j < model.edges; ++j) {
      const double x = lp.x[model.variable(i, j)];
      out.flow[i][j] = in_support(x, demand) ? x : 0.0;
    }
  }
  refresh_totals(out, instance);
  return out;
}

FlowSolution cancel_cycles(FlowSolution solution, const Instance& instance) {
  const auto adj = out_edges(instance);
  bool changed = false;
  for (int i = 0; i < solution.commodity_count(); ++i) {
    auto& x = solution.flow[i];
    for (;;) {
      const std::vector<int> cycle =
          find_support_cycle(solution, instance, i, adj);
      if (cycle.empty()) break;
      int argmin = cycle.front();
      for (int e : cycle) {
        if (x[e] < x[argmin]) argmin = e;
      }
      const double amount = x[argmin];
      for (int e : cycle) x[e] = std::max(0.0, x[e] - amount);
      x[argmin] = 0.0;
      changed = true;
    }
  }
  if (changed) refresh_totals(solution, instance);
  return solution;
}

bool support_is_acyclic(const FlowSolution& solution, const Instance& instance,
                        int commodity) {
  return find_support_cycle(solution, instance, commodity, out_edges(instance))
      .empty();
}

std::optional<FlowSolution> relax(const Instance& instance,
                                  const SafetyParams& safety) {
  const LpModel model = build_lp(instance, safety);
  std::optional<FlowSolution> flow = solve_lp(model, instance);
  if (!flow) return std::nullopt;
  return cancel_cycles(std::move(*flow), instance);
}

void write_flow_csv(const FlowSolution& solution, std::ostream& out) {
  out << "# safeflow flow v1\n";
  out << "kind,commodity,edge,flow\n";
  for (int i = 0; i < solution.commodity_count(); ++i) {
    for (std::size_t j = 0; j < solution.flow[i].size(); ++j) {
      if (solution.flow[i][j] == 0.0) continue;
      out << fmt::format("commodity,{},{},{}\n", i, j, solution.flow[i][j]);
    }
  }
  for (std::size_t j = 0; j < solution.aggregate.size(); ++j) {
    out << fmt::format("aggregate,,{},{}\n", j, solution.aggregate[j]);
  }
}

}  // namespace safeflow
