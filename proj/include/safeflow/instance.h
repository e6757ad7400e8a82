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

// Problem instances for capacitated unsplittable flow on directed
// multigraphs: data model, validation, demand normalization, JSON file I/O
// and a seeded random generator.

#ifndef SAFEFLOW_INSTANCE_H_
#define SAFEFLOW_INSTANCE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace safeflow {

struct Edge {
  int id = 0;
  int from = 0;
  int to = 0;
  double capacity = 0.0;
  // Cost per unit of demand routed over the edge.
  double cost = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Demand {
  int id = 0;
  int source = 0;
  int target = 0;
  double value = 0.0;

  friend bool operator==(const Demand&, const Demand&) = default;
};

// A directed multigraph with edge capacities and costs plus a list of
// commodities. Indices are 0-based; edge and demand ids equal their
// positions in the respective vectors.
struct Instance {
  int node_count = 0;
  std::vector<Edge> edges;
  std::vector<Demand> demands;

  int edge_count() const { return static_cast<int>(edges.size()); }
  int demand_count() const { return static_cast<int>(demands.size()); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Outgoing edge ids per node, in increasing edge id order.
std::vector<std::vector<int>> out_edges(const Instance& instance);

struct Violation {
  enum class Subject { kInstance, kEdge, kDemand };
  Subject subject = Subject::kInstance;
  int id = -1;
  std::string message;

  std::string to_string() const;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

enum class DemandBound {
  // Demands must already satisfy value <= 1.
  kNormalized,
  // Any positive demand is accepted; normalize() fixes the scale later.
  kAnyPositive,
};

// Collects every invariant violation. Never throws.
ValidationResult validate(const Instance& instance,
                          DemandBound bound = DemandBound::kNormalized);

struct NormalizedInstance {
  Instance instance;
  // Divisor applied to every demand and capacity (1 when unchanged).
  double scale = 1.0;
};

// Divides demands and capacities by the largest demand when it exceeds 1.
// Throws InvalidInstanceError on nonpositive demands or capacities.
NormalizedInstance normalize(const Instance& instance);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct GeneratorParams {
  int nodes = 6;
  double edge_prob = 0.5;
  Range capacity{20.0, 40.0};
  Range cost{1.0, 10.0};
  Range demand{0.1, 1.0};
  int commodities = 3;
  std::uint64_t seed = 0;
  // Graph redraws before giving up when no node reaches another.
  int max_attempts = 100;
};

// Erdos-Renyi style digraph: every ordered pair (u, v), u != v, becomes an
// edge with probability edge_prob. Capacities, costs and demands are uniform
// in their ranges. Terminal pairs are drawn uniformly among pairs where the
// target is reachable from the source. Deterministic in `seed`.
Instance generate_random(const GeneratorParams& params);

// JSON encoding: {"version": 1, "nodes", "edges": [...], "demands": [...]}.
std::string to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& instance,
                    const std::filesystem::path& path);

}  // namespace safeflow

#endif  // SAFEFLOW_INSTANCE_H_
