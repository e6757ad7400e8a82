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

#include "safeflow/mcmf.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "gtest/gtest.h"
#include "safeflow/random.h"
#include "support/fixtures.h"
#include "support/flow_checks.h"
#include "support/ssp_min_cost_flow.h"

namespace safeflow {
namespace {

using testing::explicit_safety;
using testing::make_instance;

std::vector<double> capacities_of(const Instance& g) {
  std::vector<double> c;
  for (const Edge& e : g.edges) c.push_back(e.capacity);
  return c;
}

// Random instance whose capacities are already "shrunk" (used directly as
// C~), tight enough that commodities have to split.
Instance tight_instance(std::uint64_t seed, int nodes, int commodities) {
  GeneratorParams p;
  p.nodes = nodes;
  p.edge_prob = 0.45;
  p.capacity = {0.3, 1.6};
  p.cost = {1.0, 10.0};
  p.demand = {0.3, 1.0};
  p.commodities = commodities;
  p.seed = seed;
  return generate_random(p);
}

TEST(BuildLpTest, SingleEdgeSingleCommodity) {
  const Instance g = make_instance(2, {{0, 1, 5.0}}, {{0, 1, 0.7}});
  const LpModel model = build_lp(g, explicit_safety({4.0}, g));
  EXPECT_EQ(model.program.num_vars, 1);
  // Supply row at the source plus the capacity row.
  ASSERT_EQ(model.program.rows.size(), 2u);
  EXPECT_EQ(model.program.rows[0].sense, RowSense::kEqual);
  EXPECT_EQ(model.program.rows[0].rhs, 0.7);
  const auto flow = solve_lp(model, g);
  ASSERT_TRUE(flow.has_value());
  EXPECT_NEAR(flow->flow[0][0], 0.7, 1e-12);
}

TEST(BuildLpTest, DimensionsAndCapacityRows) {
  const Instance g = make_instance(
      4, {{0, 1, 9.0}, {1, 2, 9.0}, {2, 3, 9.0}, {0, 3, 9.0}, {1, 3, 9.0}},
      {{0, 3, 1.0}, {1, 3, 0.5}});
  const LpModel model = build_lp(g, explicit_safety({1, 2, 3, 4, 5}, g));
  EXPECT_EQ(model.program.num_vars, 2 * 5);
  const auto& rows = model.program.rows;
  ASSERT_EQ(rows.size() - model.first_capacity_row, 5u);
  for (int j = 0; j < 5; ++j) {
    const LpRow& row = rows[model.first_capacity_row + j];
    EXPECT_EQ(row.sense, RowSense::kLessEqual);
    EXPECT_EQ(row.rhs, j + 1.0);
    ASSERT_EQ(row.terms.size(), 2u);
    EXPECT_EQ(row.terms[0], std::make_pair(model.variable(0, j), 1.0));
    EXPECT_EQ(row.terms[1], std::make_pair(model.variable(1, j), 1.0));
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 5; ++j) {
      EXPECT_EQ(model.program.objective[model.variable(i, j)], g.edges[j].cost);
    }
  }
}

TEST(SolveLpTest, CheaperParallelEdgeWins) {
  const Instance g =
      make_instance(2, {{0, 1, 10.0, 1.0}, {0, 1, 10.0, 2.0}}, {{0, 1, 1.0}});
  const auto flow = solve_lp(build_lp(g, explicit_safety({5.0, 5.0}, g)), g);
  ASSERT_TRUE(flow.has_value());
  EXPECT_NEAR(flow->flow[0][0], 1.0, 1e-12);
  EXPECT_EQ(flow->flow[0][1], 0.0);
  EXPECT_NEAR(flow->total_cost, 1.0, 1e-12);
}

TEST(SolveLpTest, CapacityCutIsInfeasible) {
  const Instance g = make_instance(2, {{0, 1, 10.0}}, {{0, 1, 1.0}});
  EXPECT_FALSE(solve_lp(build_lp(g, explicit_safety({0.5}, g)), g).has_value());
}

TEST(SolveLpTest, DisconnectedTerminalIsInfeasible) {
  const Instance g = make_instance(3, {{0, 1, 10.0}}, {{0, 2, 1.0}});
  EXPECT_FALSE(solve_lp(build_lp(g, explicit_safety({5.0}, g)), g).has_value());
}

TEST(SolveLpTest, MatchesSuccessiveShortestPaths) {
  int compared = 0;
  for (std::uint64_t seed = 0; compared < 40; ++seed) {
    ASSERT_LT(seed, 400u);
    const Instance g = tight_instance(seed, 7, 1);
    const std::vector<double> caps = capacities_of(g);
    const Demand& d = g.demands[0];
    const auto oracle =
        testing::ssp_min_cost_flow(g, caps, d.source, d.target, d.value);
    const auto flow = solve_lp(build_lp(g, explicit_safety(caps, g)), g);
    ASSERT_EQ(flow.has_value(), oracle.has_value()) << "seed " << seed;
    if (!flow) continue;
    EXPECT_NEAR(flow->total_cost, oracle->cost, 1e-6 * oracle->cost)
        << "seed " << seed;
    ++compared;
  }
}

TEST(CancelCyclesTest, AcyclicFlowUnchanged) {
  const Instance g = testing::diamond();
  const FlowSolution f = testing::diamond_flow(g, 0.3);
  EXPECT_EQ(cancel_cycles(f, g), f);
}

TEST(CancelCyclesTest, RemovesDisjointCirculation) {
  // Path 0 -> 1 carrying the demand plus a 3-cycle 2 -> 3 -> 4 -> 2.
  const Instance g = make_instance(
      5, {{0, 1, 5.0}, {2, 3, 5.0}, {3, 4, 5.0}, {4, 2, 5.0}}, {{0, 1, 1.0}});
  FlowSolution f;
  f.flow = {{1.0, 0.1, 0.1, 0.1}};
  refresh_totals(f, g);
  const FlowSolution out = cancel_cycles(f, g);
  EXPECT_EQ(out.flow[0], (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
  EXPECT_NEAR(out.total_cost, 1.0, 1e-15);
  EXPECT_LT(out.total_cost, f.total_cost);
}

TEST(CancelCyclesTest, CycleThroughThePathKeepsDemand) {
  // 0 -> 1 -> 2 with a back edge 2 -> 1 carrying circulating flow.
  const Instance g =
      make_instance(3, {{0, 1, 5.0}, {1, 2, 5.0}, {2, 1, 5.0}}, {{0, 2, 1.0}});
  FlowSolution f;
  f.flow = {{1.0, 1.4, 0.4}};
  refresh_totals(f, g);
  const FlowSolution out = cancel_cycles(f, g);
  EXPECT_NEAR(out.flow[0][0], 1.0, 1e-15);
  EXPECT_NEAR(out.flow[0][1], 1.0, 1e-15);
  EXPECT_EQ(out.flow[0][2], 0.0);
  EXPECT_TRUE(support_is_acyclic(out, g, 0));
  EXPECT_TRUE(testing::flow_invariant_violations(out, g, capacities_of(g)).empty());
}

TEST(CancelCyclesTest, RandomCirculationsAreRemoved) {
  Rng rng(4);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance g = tight_instance(seed, 6, 2);
    const std::vector<double> caps(g.edge_count(), 100.0);
    auto flow = solve_lp(build_lp(g, explicit_safety(caps, g)), g);
    ASSERT_TRUE(flow.has_value());
    // Inject circulations along random closed walks.
    for (int rep = 0; rep < 3; ++rep) {
      const int i = static_cast<int>(rng.below(g.demand_count()));
      const auto adj = out_edges(g);
      int v = static_cast<int>(rng.below(g.node_count));
      std::vector<int> walk_edges;
      std::vector<int> first_seen(g.node_count, -1);
      first_seen[v] = 0;
      while (!adj[v].empty() && walk_edges.size() < 30) {
        const int e = adj[v][rng.below(adj[v].size())];
        walk_edges.push_back(e);
        v = g.edges[e].to;
        if (first_seen[v] >= 0) {
          const double amount = rng.uniform(0.01, 0.5);
          for (std::size_t s = first_seen[v]; s < walk_edges.size(); ++s) {
            flow->flow[i][walk_edges[s]] += amount;
          }
          break;
        }
        first_seen[v] = static_cast<int>(walk_edges.size());
      }
    }
    refresh_totals(*flow, g);
    const double before = flow->total_cost;
    const FlowSolution out = cancel_cycles(*flow, g);
    EXPECT_LE(out.total_cost, before + 1e-12);
    EXPECT_TRUE(testing::flow_invariant_violations(out, g, caps).empty())
        << testing::flow_invariant_violations(out, g, caps);
  }
}

TEST(RelaxTest, ConstructedSafeInstance) {
  // Two commodities on disjoint dedicated paths with plenty of room.
  const Instance g = make_instance(
      4, {{0, 1, 100.0}, {2, 3, 100.0}}, {{0, 1, 1.0}, {2, 3, 1.0}});
  const auto flow = relax(g, safety_params(g));
  ASSERT_TRUE(flow.has_value());
  EXPECT_NEAR(flow->flow[0][0], 1.0, 1e-12);
  EXPECT_NEAR(flow->flow[1][1], 1.0, 1e-12);
}

TEST(RelaxTest, SharedEdgeTooThin) {
  const Instance g = make_instance(2, {{0, 1, 100.0}}, {{0, 1, 1.0}, {0, 1, 1.0}});
  EXPECT_FALSE(relax(g, explicit_safety({1.5}, g)).has_value());
  EXPECT_TRUE(relax(g, explicit_safety({2.0}, g)).has_value());
}

TEST(RelaxTest, InvariantsOnRandomInstances) {
  int solved = 0;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const Instance g = tight_instance(seed, 6 + seed % 3, 1 + seed % 4);
    const std::vector<double> caps = capacities_of(g);
    const auto flow = relax(g, explicit_safety(caps, g));
    if (!flow) continue;
    ++solved;
    EXPECT_TRUE(testing::flow_invariant_violations(*flow, g, caps).empty())
        << "seed " << seed << ": "
        << testing::flow_invariant_violations(*flow, g, caps);
    for (int i = 0; i < g.demand_count(); ++i) {
      EXPECT_TRUE(support_is_acyclic(*flow, g, i));
      EXPECT_TRUE(testing::no_improving_residual_cycle(*flow, g, caps, i))
          << "seed " << seed << " commodity " << i;
      const std::vector<double> parts = testing::decompose_commodity(*flow, g, i);
      EXPECT_LE(parts.size(), static_cast<std::size_t>(g.edge_count()));
      EXPECT_NEAR(std::accumulate(parts.begin(), parts.end(), 0.0),
                  g.demands[i].value, 1e-7);
    }
  }
  EXPECT_GT(solved, 20);
}

TEST(RelaxTest, ScalingCovariance) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance g = tight_instance(seed, 6, 2);
    const std::vector<double> caps = capacities_of(g);
    const auto base = relax(g, explicit_safety(caps, g));
    for (double s : {0.5, 3.0}) {
      Instance scaled = g;
      std::vector<double> scaled_caps = caps;
      for (Demand& d : scaled.demands) d.value *= s;
      for (double& c : scaled_caps) c *= s;
      const auto flow = relax(scaled, explicit_safety(scaled_caps, scaled));
      ASSERT_EQ(flow.has_value(), base.has_value());
      if (!flow) continue;
      EXPECT_NEAR(flow->total_cost, s * base->total_cost,
                  1e-7 * s * base->total_cost);
      for (int i = 0; i < g.demand_count(); ++i) {
        for (int j = 0; j < g.edge_count(); ++j) {
          EXPECT_NEAR(flow->flow[i][j], s * base->flow[i][j], 1e-7 * s)
              << "seed " << seed << " s " << s;
        }
      }
    }
  }
}

TEST(FlowCsvTest, Layout) {
  const Instance g = testing::diamond();
  const FlowSolution f = testing::diamond_flow(g, 0.25);
  std::ostringstream out;
  write_flow_csv(f, out);
  EXPECT_EQ(out.str(),
            "# safeflow flow v1\n"
            "kind,commodity,edge,flow\n"
            "commodity,0,0,0.25\n"
            "commodity,0,1,0.75\n"
            "commodity,0,2,0.25\n"
            "commodity,0,3,0.75\n"
            "aggregate,,0,0.25\n"
            "aggregate,,1,0.75\n"
            "aggregate,,2,0.25\n"
            "aggregate,,3,0.75\n");
}

}  // namespace
}  // namespace safeflow
