// Copyright 2026 The nfvchain Authors
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

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "nfvchain/analysis.h"
#include "nfvchain/error.h"
#include "test_support.h"

namespace nfvchain {
namespace {

using testing::Build;
using testing::LineScenario;
using testing::Nsfnet;

PlacementSolution SolveOrDie(const Scenario& s, const Strategy& strategy, int k) {
  const SolveResult r = Solve(Build(s, strategy, k));
  EXPECT_EQ(r.status, SolveStatus::kOptimal);
  return r.solution.value_or(PlacementSolution{});
}

TEST(ResourceConsumption, TrivialLine) {
  EXPECT_DOUBLE_EQ(ResourceConsumption(SolveOrDie(LineScenario(), DcNfv{{2}}, 1)), 2.0);
}

TEST(ResourceConsumption, TwoDemandsArithmetic) {
  PlacementSolution sol;
  sol.demands = {{1, 3, 8.0}, {1, 4, 12.0}};
  sol.paths = {{{1, 2, 3}}, {{1, 2, 3, 4}}};
  EXPECT_DOUBLE_EQ(ResourceConsumption(sol), 52.0);
}

TEST(ResourceConsumption, EqualsSolverObjective) {
  Scenario s = Nsfnet();
  s.budget.theta = 12.0;
  const SolveResult r = Solve(Build(s, DcNfv{{3, 5, 8, 10}}, 3));
  ASSERT_TRUE(r.has_incumbent());
  EXPECT_NEAR(ResourceConsumption(*r.solution), r.objective(), 1e-9);
}

TEST(LinkLoads, TrivialLine) {
  const Scenario s = LineScenario();
  const LoadProfile p = LinkLoads(SolveOrDie(s, DcNfv{{2}}, 1), s.topology);
  ASSERT_EQ(p.loads.size(), 4u);
  EXPECT_DOUBLE_EQ(p.loads.at({1, 2}), 1.0);
  EXPECT_DOUBLE_EQ(p.loads.at({2, 3}), 1.0);
  EXPECT_DOUBLE_EQ(p.loads.at({2, 1}), 0.0);
  EXPECT_DOUBLE_EQ(p.loads.at({3, 2}), 0.0);
  EXPECT_DOUBLE_EQ(p.max_load, 1.0);
  EXPECT_DOUBLE_EQ(p.mean_load, 0.5);
  EXPECT_DOUBLE_EQ(p.total, 2.0);
}

TEST(LinkLoads, DcCarriesEveryDemand) {
  Scenario s = WithAverageTraffic(Nsfnet(), 5.0);
  for (NodeId dc : {1, 3, 11}) {
    s.roles.dc_nodes = {dc};
    const PlacementSolution sol = SolveOrDie(s, DcOnly{}, 5);
    const LoadProfile p = LinkLoads(sol, s.topology);
    double into = 0.0, expected = 0.0;
    for (const auto& [arc, load] : p.loads) into += arc.to == dc ? load : 0.0;
    for (const Demand& d : s.demands) expected += d.source == dc ? 0.0 : d.gbps;
    EXPECT_NEAR(into, expected, 1e-9) << "dc " << dc;
    EXPECT_NEAR(p.total, ResourceConsumption(sol), 1e-9);
    for (const auto& [arc, load] : p.loads) {
      EXPECT_LE(load, *s.topology.ArcCapacity(arc.from, arc.to) + 1e-9);
    }
  }
}

TEST(CongestionSweep, NsfnetInfeasibleDcSets) {
  const Scenario s = Nsfnet();
  const std::vector<double> traffic = {7.5, 10, 12.5, 15};
  const std::vector<NodeId> nodes = s.topology.nodes();
  const CongestionReport rep = CongestionSweep(s, traffic, nodes, {5, {}}, 1);
  EXPECT_EQ(rep.NewlyInfeasible(0), (std::set<NodeId>{4, 12}));
  EXPECT_EQ(rep.NewlyInfeasible(1), (std::set<NodeId>{1, 2, 11, 14}));
  EXPECT_EQ(rep.NewlyInfeasible(2), (std::set<NodeId>{6, 7, 9, 13}));
  EXPECT_EQ(rep.NewlyInfeasible(3), (std::set<NodeId>{3, 5, 8, 10}));
  EXPECT_EQ(rep.infeasible_count, (std::vector<int>{2, 6, 10, 14}));
  ASSERT_TRUE(rep.congestion_point.has_value());
  EXPECT_DOUBLE_EQ(*rep.congestion_point, 15.0);
  EXPECT_TRUE(rep.monotone);
  EXPECT_TRUE(rep.warnings.empty());
}

TEST(CongestionSweep, AllFeasibleAtOneGbps) {
  const Scenario s = Nsfnet();
  const std::vector<double> traffic = {1.0};
  const std::vector<NodeId> nodes = s.topology.nodes();
  const CongestionReport rep = CongestionSweep(s, traffic, nodes, {5, {}});
  EXPECT_TRUE(rep.Infeasible(0).empty());
  EXPECT_FALSE(rep.congestion_point.has_value());
}

TEST(CongestionSweep, RejectsDescendingTraffic) {
  const Scenario s = Nsfnet();
  const std::vector<double> traffic = {2.0, 1.0};
  const std::vector<NodeId> nodes = {1};
  EXPECT_THROW(CongestionSweep(s, traffic, nodes, {}), Error);
}

TEST(CongestionSweep, IntakeBelowFlowMeansInfeasible) {
  const Scenario s = Nsfnet();
  const std::vector<double> traffic = {5, 7.5, 10, 12.5, 15};
  const std::vector<NodeId> nodes = s.topology.nodes();
  const CongestionReport rep = CongestionSweep(s, traffic, nodes, {5, {}});
  for (size_t t = 0; t < traffic.size(); ++t) {
    const Scenario scaled = WithAverageTraffic(s, traffic[t]);
    for (NodeId n : nodes) {
      // Flow sourced at the DC never crosses its intake.
      double entering = 0.0;
      for (const Demand& d : scaled.demands) {
        if (d.source != n) entering += d.gbps;
      }
      if (entering > IntakeCapacity(s.topology, n)) {
        EXPECT_EQ(rep.status[t].at(n), Feasibility::kInfeasible) << n << " at " << traffic[t];
      }
    }
  }
}

// Runs only on a user-digitized Internet2 scenario named by
// NFVCHAIN_INTERNET2_SCENARIO; the bundled template carries no demands.
TEST(CongestionSweep, Internet2DigitizedTraffic) {
  const char* path = std::getenv("NFVCHAIN_INTERNET2_SCENARIO");
  if (path == nullptr) GTEST_SKIP() << "set NFVCHAIN_INTERNET2_SCENARIO to a digitized scenario";
  const Scenario s = LoadScenario(path);
  const std::vector<double> traffic = {14};
  const std::vector<NodeId> nodes = s.topology.nodes();
  const CongestionReport rep = CongestionSweep(s, traffic, nodes, {5, {}});
  const std::set<NodeId> infeasible = rep.Infeasible(0);
  for (NodeId n : {13, 14, 15}) EXPECT_TRUE(infeasible.contains(n)) << n;
}

// Single demand 1->3 on a line with a DC reachable only by a detour: the
// chain fits on one on-path node once theta reaches flow x cores.
Scenario InflectionToy() {
  Scenario s;
  s.topology = Topology({1, 2, 3, 4, 5},
                        {{1, 2, 10.0}, {2, 3, 10.0}, {1, 4, 10.0}, {4, 5, 10.0}, {5, 3, 10.0}});
  s.roles.dc_nodes = {5};
  s.demands = {{1, 3, 2.0}};
  s.catalog = {{"A", 1.5, 1.0, 0.5, false}};
  s.chain = {"A"};
  return s;
}

TEST(InflectionPoint, ClosedFormToy) {
  const std::vector<double> thetas = {1, 2, 3, 4, 8};
  const InflectionResult res = InflectionPoint(InflectionToy(), DcNfvAll{}, thetas, {3, {}});
  EXPECT_DOUBLE_EQ(res.bound, 4.0);
  ASSERT_TRUE(res.theta.has_value());
  EXPECT_DOUBLE_EQ(*res.theta, 3.0);
  ASSERT_EQ(res.probes.size(), thetas.size());
  EXPECT_FALSE(res.probes[0].at_bound);
  EXPECT_EQ(res.probes[0].status, SolveStatus::kOptimal);
  EXPECT_DOUBLE_EQ(res.probes[0].objective, 6.0);
  EXPECT_TRUE(res.probes[2].at_bound);
  EXPECT_FALSE(res.any_infeasible);
}

TEST(InflectionPoint, CutoffOnlyKeepsTheSameAnswer) {
  const std::vector<double> thetas = {1, 2, 3, 4, 8};
  const InflectionResult res =
      InflectionPoint(InflectionToy(), DcNfvAll{}, thetas, {3, {}}, false);
  ASSERT_TRUE(res.theta.has_value());
  EXPECT_DOUBLE_EQ(*res.theta, 3.0);
  EXPECT_TRUE(std::isnan(res.probes[0].objective));
  EXPECT_EQ(res.probes[0].status, SolveStatus::kInfeasible);
  EXPECT_TRUE(res.probes[0].decided);
  EXPECT_FALSE(res.any_unknown);
}

TEST(InflectionPoint, NoneInRangeAndInfeasiblePoints) {
  Scenario s = InflectionToy();
  s.roles.dc_nodes.clear();
  const std::vector<double> thetas = {1, 2};
  const InflectionResult res = InflectionPoint(s, DcNfvAll{}, thetas, {3, {}});
  EXPECT_FALSE(res.theta.has_value());
  EXPECT_TRUE(res.any_infeasible);
  EXPECT_EQ(res.probes[0].status, SolveStatus::kInfeasible);
}

TEST(InflectionPoint, UnsettledProbeIsReportedUnknown) {
  Scenario s = Nsfnet();
  s.roles.dc_nodes = {1};
  InstanceOptions o{5, {}};
  o.solver.node_limit = 1;
  const std::vector<double> thetas = {4};
  const InflectionResult res = InflectionPoint(s, DcNfvAll{}, thetas, o);
  ASSERT_EQ(res.probes.size(), 1u);
  EXPECT_FALSE(res.probes[0].decided);
  EXPECT_FALSE(res.probes[0].at_bound);
  EXPECT_TRUE(res.any_unknown);
  EXPECT_FALSE(res.theta.has_value());
}

TEST(InflectionPoint, RejectsUnsortedTheta) {
  const std::vector<double> thetas = {4, 2};
  EXPECT_THROW(InflectionPoint(InflectionToy(), DcNfvAll{}, thetas, {}), Error);
}

TEST(Normalize, Ratios) {
  const auto out = Normalize({{"A", 10.0}, {"B", 20.0}}, "A");
  EXPECT_DOUBLE_EQ(out.at("A"), 1.0);
  EXPECT_DOUBLE_EQ(out.at("B"), 2.0);
  EXPECT_EQ(Normalize({{"x", 3.7}, {"y", 1.1}}, "x").at("x"), 1.0);
  EXPECT_THROW(Normalize({{"A", 10.0}}, "B"), Error);
  EXPECT_THROW(Normalize({{"A", 0.0}}, "A"), Error);
}

TEST(StrategyOrdering, NsfnetSingleDc) {
  Scenario s = Nsfnet();
  s.budget.theta = 192;
  for (NodeId dc : {1, 9}) {
    s.roles.dc_nodes = {dc};
    const std::vector<Strategy> order = {DcNfvAll{}, DcNfv{{3, 5, 8, 10}}, DcNfv{{3, 5, 8}},
                                         DcNfv{{3, 5}}, DcNfv{{3}}, DcOnly{}};
    double previous = 0.0;
    for (const Strategy& st : order) {
      const double omega = ResourceConsumption(SolveOrDie(s, st, 3));
      EXPECT_GE(omega, previous - 1e-9) << StrategyId(st) << " dc " << dc;
      previous = omega;
    }
  }
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(257);
  ParallelFor(hits.size(), 4, [&](size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  ParallelFor(0, 4, [](size_t) { FAIL(); });
}

TEST(ParallelFor, PropagatesExceptions) {
  EXPECT_THROW(ParallelFor(8, 3,
                           [](size_t i) {
                             if (i == 5) throw std::runtime_error("boom");
                           }),
               std::runtime_error);
}

}  // namespace
}  // namespace nfvchain
