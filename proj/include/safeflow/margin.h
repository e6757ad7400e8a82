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

// Closed-form safety-margin math: the per-edge shrink factor, the tail
// bound on rounded edge loads, and the resulting multi-trial guarantee.
//
// With m edges, an edge of capacity C gets the margin
//
//   rho(C, m) = 1 - (e - 1) * sqrt(ln(2m) / C)
//
// and the relaxation is solved against C~ = rho * C. Rounding a flow that
// respects C~ overloads a given edge with probability below 1 / (2m), so a
// trial fails with probability below 1/2 and r trials all fail with
// probability below 2^-r.

#ifndef SAFEFLOW_MARGIN_H_
#define SAFEFLOW_MARGIN_H_

#include <numbers>
#include <vector>

#include "safeflow/instance.h"

namespace safeflow {

inline constexpr double kEMinusOne = std::numbers::e - 1.0;

// May return a value <= 0 for thin edges; callers decide what to do.
double rho(double capacity, int edge_count);

// Capacity at which rho() is exactly `floor`: (e-1)^2 ln(2m) / (1-floor)^2.
double min_capacity_for_margin(int edge_count, double floor = 0.0);

struct SafetyParams {
  std::vector<double> rho;
  std::vector<double> shrunk_capacity;
  int edge_count = 0;
};

// Per-edge margins for a validated, normalized instance. Throws
// CapacityTooSmallError for the first edge whose margin is <= rho_floor.
SafetyParams safety_params(const Instance& instance, double rho_floor = 0.0);

// Tail bound Pr(load > (1 + delta) * expected) <
//   (e^delta / (1 + delta)^(1 + delta))^expected, evaluated in log space.
double chernoff_tail(double delta, double expected);

// Deviation (e - 1) * sqrt(ln(1 / epsilon) / expected).
double delta_for_epsilon(double epsilon, double expected);

struct TailQuery {
  double delta = 0.0;
  double expected = 1.0;
  double epsilon = 0.5;

  bool valid() const {
    return delta >= 0.0 && expected > 0.0 && epsilon > 0.0 && epsilon < 1.0;
  }
  // True when the tail bound at `delta` is within `epsilon`.
  bool within_epsilon() const {
    return chernoff_tail(delta, expected) <= epsilon;
  }
};

// C >= (1 + (e - 1) * sqrt(ln(2m) / F)) * F, i.e. a flow F on an edge of
// capacity C leaves enough headroom for the per-edge failure budget 1/(2m).
bool capacity_condition_holds(double capacity, double flow, int edge_count);

// Largest flow satisfying capacity_condition_holds() for this capacity,
// from solving the condition as a quadratic in sqrt(F).
double max_flow_for_capacity(double capacity, int edge_count);

// 2^-r: probability bound that r independent trials all fail.
double failure_bound(int trials);

}  // namespace safeflow

#endif  // SAFEFLOW_MARGIN_H_
