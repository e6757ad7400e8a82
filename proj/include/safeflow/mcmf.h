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

// Continuous minimum-cost multicommodity flow relaxation under the shrunk
// capacities, solved with the built-in simplex in the edge formulation
// (one variable per commodity and edge).

#ifndef SAFEFLOW_MCMF_H_
#define SAFEFLOW_MCMF_H_

#include <iosfwd>
#include <optional>
#include <vector>

#include "safeflow/instance.h"
#include "safeflow/margin.h"
#include "safeflow/simplex.h"

namespace safeflow {

inline constexpr double kLpTolerance = 1e-7;
inline constexpr double kFeasibilityTolerance = 1e-7;
// Relative to the commodity's demand: x[i][j] > kZeroTolerance * V_i is
// "support". Shared by cycle cancelling and the rounding walk.
inline constexpr double kZeroTolerance = 1e-9;

struct FlowSolution {
  // flow[i][j]: flow of commodity i on edge j.
  std::vector<std::vector<double>> flow;
  // aggregate[j] = sum over commodities of flow[i][j].
  std::vector<double> aggregate;
  double total_cost = 0.0;

  int commodity_count() const { return static_cast<int>(flow.size()); }

  friend bool operator==(const FlowSolution&, const FlowSolution&) = default;
};

// Recomputes aggregate and total_cost from `flow`.
void refresh_totals(FlowSolution& solution, const Instance& instance);

inline bool in_support(double x, double demand) {
  return x > kZeroTolerance * demand;
}

struct LpModel {
  int commodities = 0;
  int edges = 0;
  LinearProgram program;
  // Index of the first capacity row; rows before it are flow balance rows.
  int first_capacity_row = 0;

  int variable(int commodity, int edge) const {
    return commodity * edges + edge;
  }
};

// Variables x[i][j] >= 0. For each commodity: one balance row per node
// other than its terminals (in = out), one supply row at the source
// (out - in = V_i). One row per edge: sum_i x[i][j] <= C~_j. Objective is
// sum_j cost_j * sum_i x[i][j]. Balance rows of isolated nodes are omitted.
LpModel build_lp(const Instance& instance, const SafetyParams& safety);

// Returns std::nullopt when no flow of the demanded values fits under C~.
// Entries at or below the support threshold are zeroed. Throws
// IterationLimitError if the simplex safeguard is exhausted.
std::optional<FlowSolution> solve_lp(const LpModel& model,
                                     const Instance& instance);

// Removes every directed cycle from each commodity's positive-flow support
// by subtracting the cycle's bottleneck. Never increases cost.
FlowSolution cancel_cycles(FlowSolution solution, const Instance& instance);

// True when commodity i's support subgraph has no directed cycle.
bool support_is_acyclic(const FlowSolution& solution, const Instance& instance,
                        int commodity);

// build_lp, solve_lp, cancel_cycles. std::nullopt means no safe solution
// can exist.
std::optional<FlowSolution> relax(const Instance& instance,
                                  const SafetyParams& safety);

// CSV: a "# safeflow flow v1" line, the header "kind,commodity,edge,flow",
// one "commodity" row per (commodity, edge) with positive flow, then one
// "aggregate" row per edge.
void write_flow_csv(const FlowSolution& solution, std::ostream& out);

}  // namespace safeflow

#endif  // SAFEFLOW_MCMF_H_
