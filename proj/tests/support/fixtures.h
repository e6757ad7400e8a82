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

#ifndef SAFEFLOW_TESTS_SUPPORT_FIXTURES_H_
#define SAFEFLOW_TESTS_SUPPORT_FIXTURES_H_

#include <initializer_list>
#include <tuple>

#include "safeflow/instance.h"
#include "safeflow/margin.h"
#include "safeflow/mcmf.h"

namespace safeflow::testing {

struct EdgeSpec {
  int from;
  int to;
  double capacity;
  double cost = 1.0;
};

struct DemandSpec {
  int source;
  int target;
  double value;
};

inline Instance make_instance(int nodes, std::initializer_list<EdgeSpec> edges,
                              std::initializer_list<DemandSpec> demands) {
  Instance g;
  g.node_count = nodes;
  for (const EdgeSpec& e : edges) {
    g.edges.push_back({g.edge_count(), e.from, e.to, e.capacity, e.cost});
  }
  for (const DemandSpec& d : demands) {
    g.demands.push_back({g.demand_count(), d.source, d.target, d.value});
  }
  return g;
}

// s=0 -> {a=1, b=2} -> t=3. Edges: 0:s->a, 1:s->b, 2:a->t, 3:b->t.
inline Instance diamond(double capacity = 100.0, double demand = 1.0) {
  return make_instance(4,
                       {{0, 1, capacity}, {0, 2, capacity},
                        {1, 3, capacity}, {2, 3, capacity}},
                       {{0, 3, demand}});
}

// Diamond flow with `via_a` of the demand through a.
inline FlowSolution diamond_flow(const Instance& g, double via_a) {
  const double v = g.demands[0].value;
  FlowSolution f;
  f.flow = {{via_a, v - via_a, via_a, v - via_a}};
  refresh_totals(f, g);
  return f;
}

// Safety parameters with explicitly chosen shrunk capacities.
inline SafetyParams explicit_safety(const std::vector<double>& shrunk,
                                    const Instance& g) {
  SafetyParams s;
  s.edge_count = g.edge_count();
  s.shrunk_capacity = shrunk;
  for (std::size_t j = 0; j < shrunk.size(); ++j) {
    s.rho.push_back(shrunk[j] / g.edges[j].capacity);
  }
  return s;
}

}  // namespace safeflow::testing

#endif  // SAFEFLOW_TESTS_SUPPORT_FIXTURES_H_
