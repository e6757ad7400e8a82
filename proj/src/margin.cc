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

#include "safeflow/margin.h"

#include <cmath>

#include "safeflow/errors.h"

namespace safeflow {

double rho(double capacity, int edge_count) {
  return 1.0 - kEMinusOne * std::sqrt(std::log(2.0 * edge_count) / capacity);
}

double min_capacity_for_margin(int edge_count, double floor) {
  const double headroom = 1.0 - floor;
  return kEMinusOne * kEMinusOne * std::log(2.0 * edge_count) /
         (headroom * headroom);
}

SafetyParams safety_params(const Instance& instance, double rho_floor) {
  const int m = instance.edge_count();
  if (m < 1) throw InvalidInstanceError("at least one edge is required");
  SafetyParams params;
  params.edge_count = m;
  params.rho.reserve(m);
  params.shrunk_capacity.reserve(m);
  for (const Edge& e : instance.edges) {
    const double r = rho(e.capacity, m);
    if (!(r > rho_floor)) {
      throw CapacityTooSmallError(e.id, e.capacity,
                                  min_capacity_for_margin(m, rho_floor));
    }
    params.rho.push_back(r);
    params.shrunk_capacity.push_back(r * e.capacity);
  }
  return params;
}

double chernoff_tail(double delta, double expected) {
  return std::exp(expected * (delta - (1.0 + delta) * std::log1p(delta)));
}

double delta_for_epsilon(double epsilon, double expected) {
  return kEMinusOne * std::sqrt(std::log(1.0 / epsilon) / expected);
}

bool capacity_condition_holds(double capacity, double flow, int edge_count) {
  const double deviation =
      kEMinusOne * std::sqrt(std::log(2.0 * edge_count) / flow);
  return capacity >= (1.0 + deviation) * flow;
}

double max_flow_for_capacity(double capacity, int edge_count) {
  // F + a * sqrt(F) = C with a = (e - 1) sqrt(ln 2m).
  const double a = kEMinusOne * std::sqrt(std::log(2.0 * edge_count));
  const double root = (std::sqrt(a * a + 4.0 * capacity) - a) / 2.0;
  return root * root;
}

double failure_bound(int trials) { return std::ldexp(1.0, -trials); }

}  // namespace safeflow
