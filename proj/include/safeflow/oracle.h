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

// Brute-force ground truth for tiny instances. Used by tests and the
// `check --oracle` command, never by the solver.

#ifndef SAFEFLOW_ORACLE_H_
#define SAFEFLOW_ORACLE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "safeflow/instance.h"
#include "safeflow/mcmf.h"
#include "safeflow/path.h"

namespace safeflow {

struct PathEnumeration {
  std::vector<Path> paths;
  bool truncated = false;
};

// All simple directed source -> target paths in DFS order (outgoing edges by
// increasing id), stopping after `limit` paths.
PathEnumeration enumerate_simple_paths(const Instance& instance, int source,
                                       int target, std::size_t limit);

struct OracleLimits {
  int max_nodes = 10;
  int max_commodities = 4;
  std::size_t max_paths_per_commodity = 100000;
  // Bound on the product of per-commodity path counts.
  double max_assignments = 1e7;
};

struct AssignmentSearch {
  bool found = false;
  std::vector<Path> witness;
  std::uint64_t nodes_explored = 0;
};

// Backtracking over one path per commodity with residual-capacity pruning.
// A load fits when it is <= capacity + kCheckTolerance.
AssignmentSearch find_path_assignment(
    const Instance& instance, const std::vector<double>& capacities,
    const std::vector<std::vector<Path>>& candidates);

struct OracleVerdict {
  bool feasible_exists = false;
  bool safe_exists = false;
  // Safe witness if one exists, otherwise a feasible one.
  std::optional<std::vector<Path>> witness;
  std::uint64_t paths_enumerated = 0;
};

// Decides whether a feasible (original capacities) and a safe
// (`shrunk_capacities`) path system exist. Throws OracleTooLargeError when
// the instance exceeds `limits`.
OracleVerdict exact_feasibility(const Instance& instance,
                                const std::vector<double>& shrunk_capacities,
                                const OracleLimits& limits = {});

// Probability that commodity i's walk uses each edge, by propagating node
// visit probabilities in topological order of the support DAG. Throws
// CyclicSupportError if the support has a cycle.
std::vector<double> exact_walk_distribution(const FlowSolution& flow,
                                            const Instance& instance,
                                            int commodity);

std::string verdict_to_json(const OracleVerdict& verdict);

}  // namespace safeflow

#endif  // SAFEFLOW_ORACLE_H_
