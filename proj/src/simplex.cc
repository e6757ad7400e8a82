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

#include "safeflow/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace safeflow {
namespace {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& options)
      : options_(options), structural_(lp.num_vars) {
    const int rows = static_cast<int>(lp.rows.size());
    // Normalize every row to a nonnegative right-hand side first.
    std::vector<LpRow> normalized = lp.rows;
    for (LpRow& row : normalized) {
      if (row.rhs < 0.0) {
        row.rhs = -row.rhs;
        for (auto& term : row.terms) term.second = -term.second;
        if (row.sense == RowSense::kLessEqual) {
          row.sense = RowSense::kGreaterEqual;
        } else if (row.sense == RowSense::kGreaterEqual) {
          row.sense = RowSense::kLessEqual;
        }
      }
      rhs_scale_ = std::max(rhs_scale_, row.rhs);
    }
    int slacks = 0;
    int artificials = 0;
    for (const LpRow& row : normalized) {
      if (row.sense != RowSense::kEqual) ++slacks;
      if (row.sense != RowSense::kLessEqual) ++artificials;
    }
    first_artificial_ = structural_ + slacks;
    cols_ = first_artificial_ + artificials;
    width_ = cols_ + 1;
    data_.assign(static_cast<std::size_t>(rows) * width_, 0.0);
    basis_.assign(rows, -1);
    row_alive_.assign(rows, true);

    int next_slack = structural_;
    int next_artificial = first_artificial_;
    for (int r = 0; r < rows; ++r) {
      const LpRow& row = normalized[r];
      for (const auto& [var, coef] : row.terms) at(r, var) += coef;
      at(r, cols_) = row.rhs;
      switch (row.sense) {
        case RowSense::kLessEqual:
          at(r, next_slack) = 1.0;
          basis_[r] = next_slack++;
          break;
        case RowSense::kGreaterEqual:
          at(r, next_slack++) = -1.0;
          at(r, next_artificial) = 1.0;
          basis_[r] = next_artificial++;
          break;
        case RowSense::kEqual:
          at(r, next_artificial) = 1.0;
          basis_[r] = next_artificial++;
          break;
      }
    }
    const long size = static_cast<long>(rows) + cols_;
    max_iterations_ = options.max_iterations > 0
                          ? options.max_iterations
                          : std::max(10000L, 50 * size);
  }

  LpSolution solve(const std::vector<double>& objective) {
    LpSolution out;
    // Phase 1: minimize the sum of artificials.
    std::vector<double> phase1(cols_, 0.0);
    for (int j = first_artificial_; j < cols_; ++j) phase1[j] = 1.0;
    LpStatus status = optimize(phase1, /*allow_artificial=*/true);
    if (status == LpStatus::kIterationLimit) return finish(out, status);
    double infeasibility = 0.0;
    for (int r = 0; r < rows(); ++r) {
      if (row_alive_[r] && basis_[r] >= first_artificial_) {
        infeasibility += at(r, cols_);
      }
    }
    if (infeasibility > options_.feasibility_tol * std::max(1.0, rhs_scale_)) {
      return finish(out, LpStatus::kInfeasible);
    }
    drive_out_artificials();

    std::vector<double> phase2(cols_, 0.0);
    std::copy(objective.begin(), objective.end(), phase2.begin());
    status = optimize(phase2, /*allow_artificial=*/false);
    if (status != LpStatus::kOptimal) return finish(out, status);

    out.x.assign(structural_, 0.0);
    for (int r = 0; r < rows(); ++r) {
      if (row_alive_[r] && basis_[r] < structural_) {
        out.x[basis_[r]] = std::max(0.0, at(r, cols_));
      }
    }
    out.objective = 0.0;
    for (int j = 0; j < structural_; ++j) out.objective += objective[j] * out.x[j];
    return finish(out, LpStatus::kOptimal);
  }

 private:
  int rows() const { return static_cast<int>(basis_.size()); }
  double& at(int r, int c) { return data_[static_cast<std::size_t>(r) * width_ + c]; }

  LpSolution& finish(LpSolution& out, LpStatus status) {
    out.status = status;
    out.iterations = iterations_;
    out.bland_pivots = bland_pivots_;
    return out;
  }

  // Reduced costs d_j = c_j - c_B B^-1 A_j for the current basis.
  std::vector<double> reduced_costs(const std::vector<double>& cost) {
    std::vector<double> d(cost.begin(), cost.end());
    d.push_back(0.0);  // objective value slot (negated)
    for (int r = 0; r < rows(); ++r) {
      if (!row_alive_[r]) continue;
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = &at(r, 0);
      for (int j = 0; j <= cols_; ++j) d[j] -= cb * row[j];
    }
    return d;
  }

  LpStatus optimize(const std::vector<double>& cost, bool allow_artificial) {
    std::vector<double> d = reduced_costs(cost);
    const int limit = allow_artificial ? cols_ : first_artificial_;
    int degenerate_run = 0;
    bool bland = false;
    while (true) {
      if (iterations_ >= max_iterations_) return LpStatus::kIterationLimit;
      int entering = -1;
      double best = -options_.optimality_tol;
      for (int j = 0; j < limit; ++j) {
        if (d[j] < best) {
          entering = j;
          if (bland) break;
          best = d[j];
        }
      }
      if (entering < 0) return LpStatus::kOptimal;

      int leaving = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows(); ++r) {
        if (!row_alive_[r]) continue;
        const double a = at(r, entering);
        if (a <= options_.pivot_tol) continue;
        const double ratio = std::max(0.0, at(r, cols_)) / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && leaving >= 0 &&
             basis_[r] < basis_[leaving])) {
          best_ratio = std::min(ratio, best_ratio);
          leaving = r;
        }
      }
      if (leaving < 0) return LpStatus::kUnbounded;

      if (bland) ++bland_pivots_;
      if (best_ratio <= options_.pivot_tol) {
        if (++degenerate_run >= options_.degenerate_streak) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      pivot(leaving, entering, d);
      ++iterations_;
    }
  }

  void pivot(int pr, int pc, std::vector<double>& d) {
    double* prow = &at(pr, 0);
    const double inv = 1.0 / prow[pc];
    for (int j = 0; j <= cols_; ++j) prow[j] *= inv;
    prow[pc] = 1.0;
    for (int r = 0; r < rows(); ++r) {
      if (r == pr || !row_alive_[r]) continue;
      double* row = &at(r, 0);
      const double f = row[pc];
      if (f == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) row[j] -= f * prow[j];
      row[pc] = 0.0;
      if (std::fabs(row[cols_]) < 1e-13) row[cols_] = 0.0;
    }
    const double f = d[pc];
    if (f != 0.0) {
      for (int j = 0; j <= cols_; ++j) d[j] -= f * prow[j];
      d[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  // Pivots zero-valued artificials out of the basis; rows where that is
  // impossible are linearly dependent and get dropped.
  void drive_out_artificials() {
    std::vector<double> unused(cols_ + 1, 0.0);
    for (int r = 0; r < rows(); ++r) {
      if (!row_alive_[r] || basis_[r] < first_artificial_) continue;
      int col = -1;
      double best = options_.pivot_tol;
      for (int j = 0; j < first_artificial_; ++j) {
        if (std::fabs(at(r, j)) > best) {
          best = std::fabs(at(r, j));
          col = j;
        }
      }
      if (col < 0) {
        row_alive_[r] = false;
      } else {
        pivot(r, col, unused);
      }
    }
  }

  SimplexOptions options_;
  int structural_;
  int first_artificial_ = 0;
  int cols_ = 0;
  int width_ = 0;
  double rhs_scale_ = 0.0;
  long max_iterations_ = 0;
  long iterations_ = 0;
  long bland_pivots_ = 0;
  std::vector<double> data_;
  std::vector<int> basis_;
  std::vector<bool> row_alive_;
};

}  // namespace

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

LpSolution solve_simplex(const LinearProgram& lp,
                         const SimplexOptions& options) {
  Tableau tableau(lp, options);
  return tableau.solve(lp.objective);
}

}  // namespace safeflow
