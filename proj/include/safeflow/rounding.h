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

// Randomized rounding of a fractional multicommodity flow into one path per
// commodity, and the repeated-trial driver around it.
//
// Each commodity walks from its source, choosing at every node an outgoing
// support edge with probability proportional to the commodity's flow on it,
// until it reaches its target. On acyclic support the walk is a simple path
// and edge j is used with probability x[i][j] / V_i, so the expected rounded
// load of every edge equals its fractional flow.

#ifndef SAFEFLOW_ROUNDING_H_
#define SAFEFLOW_ROUNDING_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "safeflow/instance.h"
#include "safeflow/margin.h"
#include "safeflow/mcmf.h"
#include "safeflow/path.h"
#include "safeflow/random.h"

namespace safeflow {

inline constexpr double kCheckTolerance = 1e-12;

struct PathSystem {
  std::vector<Path> paths;  // paths[i] connects demand i's terminals
  std::vector<double> edge_load;
  bool feasible = false;

  friend bool operator==(const PathSystem&, const PathSystem&) = default;
};

// Sum of V_i over the paths that traverse each edge.
std::vector<double> edge_loads(const std::vector<Path>& paths,
                               const Instance& instance);

// Recomputes the loads from the paths and compares them with the
// instance's capacities: load_j <= C_j + kCheckTolerance for every edge.
bool check_feasible(const PathSystem& system, const Instance& instance);

// Structural check of a sampled walk: correct terminals, consecutive edges,
// no repeated node, at most n - 1 edges, and (when `flow` is given) only
// support edges of the commodity.
bool is_valid_walk(const Path& path, const Instance& instance, int commodity,
                   const FlowSolution* flow = nullptr);

// Precomputed per-commodity branching tables for repeated walks over the
// same flow.
class WalkSampler {
 public:
  WalkSampler(const FlowSolution& flow, const Instance& instance);

  // Throws DeadEndError when a non-target node has no support outflow and
  // CyclicSupportError when the walk revisits a node.
  Path walk(int commodity, Rng& rng) const;

  int commodity_count() const { return static_cast<int>(terminals_.size()); }

 private:
  struct Branch {
    int edge;
    int head;
    double cumulative;
  };
  int node_count_;
  std::vector<std::pair<int, int>> terminals_;
  // branches_[i][v]: support edges of commodity i leaving v.
  std::vector<std::vector<std::vector<Branch>>> branches_;
};

Path walk_one(const FlowSolution& flow, const Instance& instance,
              int commodity, Rng& rng);

// Independent random stream for one commodity in one trial.
Rng commodity_stream(std::uint64_t seed, std::uint64_t trial, int commodity);

// One walk per commodity, each on its own substream, then loads and the
// feasibility flag against the instance's capacities.
PathSystem round_paths(const WalkSampler& sampler, const Instance& instance,
                       std::uint64_t seed, std::uint64_t trial);
PathSystem round_paths(const FlowSolution& flow, const Instance& instance,
                       std::uint64_t seed, std::uint64_t trial);

// Sum over edges with positive flow of chernoff_tail(C_j / F_j - 1, F_j):
// a bound on the probability that a single trial overloads some edge.
double overload_union_bound(const FlowSolution& flow,
                            const Instance& instance);

struct DriverConfig {
  int trials = 20;
  std::uint64_t seed = 0;
  double rho_floor = 0.0;
};

enum class Verdict { kFound, kNoSafeSolution, kNotFound };

const char* to_string(Verdict verdict);

struct RoundingReport {
  Verdict verdict = Verdict::kNotFound;
  // 1-based index of the first feasible trial; 0 unless kFound.
  int found_trial = 0;
  std::optional<PathSystem> paths;
  int trials_run = 0;
  std::vector<bool> per_trial_feasible;
  // Trials discarded because a walk hit a dead end (counted as failures).
  int dead_end_trials = 0;
  double theorem_bound = 1.0;
  double union_bound = 1.0;
  // Normalization divisor; capacities, flows and loads are in scaled units.
  double scale = 1.0;
  // The relaxation is deterministic, so it is solved once and every trial
  // resamples the rounding only.
  int lp_solves = 0;
  std::vector<double> capacity;
  SafetyParams safety;
  std::optional<FlowSolution> flow;
};

// Validate, normalize, compute margins, solve the relaxation once, then run
// up to config.trials independent rounding trials and stop at the first
// feasible one. Throws InvalidInstanceError, CapacityTooSmallError or
// IterationLimitError.
RoundingReport solve(const Instance& instance, const DriverConfig& config);

// Steps after the relaxation: up to config.trials roundings of `flow` on the
// normalized instance, first feasible trial wins. `report` carries the
// fields already filled in by solve(); its verdict, trial data and union
// bound are overwritten.
void run_trials(const Instance& normalized, const FlowSolution& flow,
                const DriverConfig& config, RoundingReport& report);

// Versioned JSON encoding of a report; identical reports give identical text.
std::string report_to_json(const RoundingReport& report);

}  // namespace safeflow

#endif  // SAFEFLOW_ROUNDING_H_
