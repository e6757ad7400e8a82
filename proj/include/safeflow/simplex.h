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

// Dense-tableau two-phase primal simplex for small linear programs
//
//   minimize c'x  subject to  rows (=, <=, >=),  x >= 0.
//
// Pricing is Dantzig's rule with lowest-index tie breaking. After a streak
// of degenerate pivots the solver switches to Bland's rule until the next
// nondegenerate pivot, which rules out cycling.

#ifndef SAFEFLOW_SIMPLEX_H_
#define SAFEFLOW_SIMPLEX_H_

#include <utility>
#include <vector>

namespace safeflow {

enum class RowSense { kEqual, kLessEqual, kGreaterEqual };

struct LpRow {
  std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
  RowSense sense = RowSense::kEqual;
  double rhs = 0.0;
};

struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<LpRow> rows;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(LpStatus status);

struct SimplexOptions {
  double optimality_tol = 1e-7;
  double pivot_tol = 1e-9;
  // Relative to max(1, max |rhs|).
  double feasibility_tol = 1e-7;
  // 0 picks a limit proportional to the tableau size.
  long max_iterations = 0;
  int degenerate_streak = 50;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  long iterations = 0;
  long bland_pivots = 0;
};

LpSolution solve_simplex(const LinearProgram& lp,
                         const SimplexOptions& options = {});

}  // namespace safeflow

#endif  // SAFEFLOW_SIMPLEX_H_
