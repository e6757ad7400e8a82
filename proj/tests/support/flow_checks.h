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

// Independent invariant checks on relaxation flows.

#ifndef SAFEFLOW_TESTS_SUPPORT_FLOW_CHECKS_H_
#define SAFEFLOW_TESTS_SUPPORT_FLOW_CHECKS_H_

#include <string>
#include <vector>

#include "safeflow/instance.h"
#include "safeflow/mcmf.h"

namespace safeflow::testing {

// Empty string when conservation, demand satisfaction, capacity (against
// `capacities`) and per-commodity support acyclicity all hold.
std::string flow_invariant_violations(const FlowSolution& flow,
                                      const Instance& instance,
                                      const std::vector<double>& capacities,
                                      double tolerance = 1e-7);

// True when the support of commodity i admits a topological order.
bool support_topologically_sortable(const FlowSolution& flow,
                                    const Instance& instance, int commodity);

// Greedy path decomposition of an acyclic commodity flow. Returns the path
// values; their count is at most m and they sum to the demand.
std::vector<double> decompose_commodity(const FlowSolution& flow,
                                        const Instance& instance,
                                        int commodity);

// True when no residual cycle for commodity i has negative cost, i.e. no
// single-commodity rerouting within the aggregate slack lowers the cost.
bool no_improving_residual_cycle(const FlowSolution& flow,
                                 const Instance& instance,
                                 const std::vector<double>& capacities,
                                 int commodity, double tolerance = 1e-7);

}  // namespace safeflow::testing

#endif  // SAFEFLOW_TESTS_SUPPORT_FLOW_CHECKS_H_
