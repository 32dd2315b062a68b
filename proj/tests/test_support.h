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

// Shared fixtures for the unit and acceptance tests.

#ifndef NFVCHAIN_TESTS_TEST_SUPPORT_H_
#define NFVCHAIN_TESTS_TEST_SUPPORT_H_

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "nfvchain/analysis.h"
#include "nfvchain/ilp_model.h"
#include "nfvchain/paths.h"
#include "nfvchain/solver.h"
#include "nfvchain/topology.h"
#include "nfvchain/verify.h"

namespace nfvchain::testing {

inline std::filesystem::path DataPath(const std::string& name) {
  return std::filesystem::path(NFVCHAIN_DATA_DIR) / name;
}

inline Scenario Nsfnet() { return LoadScenario(DataPath("nsfnet_sc1.json")); }

// Line 1-2-3 with 10 Gbps links, one demand 1->3 and chain [A].
inline Scenario LineScenario(double gbps = 1.0, double cores_per_gbps = 1.0,
                             double theta = 4.0) {
  Scenario s;
  s.name = "line";
  s.topology = Topology({1, 2, 3}, {{1, 2, 10.0}, {2, 3, 10.0}});
  s.roles.nfv_nodes = {2};
  s.demands = {{1, 3, gbps}};
  s.catalog = {{"A", cores_per_gbps, 1.0, 0.5, false}};
  s.chain = {"A"};
  s.budget.theta = theta;
  return s;
}

inline IlpModel Build(const Scenario& s, const Strategy& strategy, int k) {
  const PathSet paths =
      BuildPathSet(s.topology, EffectiveRoles(s, strategy), s.demands, k, s.chain);
  return Compile(s, strategy, paths);
}

// Checks every identity a returned incumbent must satisfy; returns a list of
// failures (empty when all hold).
inline std::vector<std::string> IdentityFailures(const Scenario& s, const Strategy& strategy,
                                                 const IlpModel& model,
                                                 const SolveResult& r) {
  std::vector<std::string> out;
  if (!r.has_incumbent()) return out;
  const PlacementSolution& sol = *r.solution;
  const Verdict v = VerifySolution(s, strategy, sol);
  for (const auto& what : v.violations) out.push_back("verify: " + what);
  const LoadProfile loads = LinkLoads(sol, s.topology);
  if (std::abs(loads.total - r.objective()) > 1e-9) out.push_back("objective != sum of loads");
  if (std::abs(ResourceConsumption(sol) - r.objective()) > 1e-9) {
    out.push_back("objective != resource consumption");
  }
  if (r.objective() < ShortestPathBound(s.topology, s.demands) - 1e-9) {
    out.push_back("objective below shortest-path bound");
  }
  for (const auto& [arc, load] : loads.loads) {
    if (load > *s.topology.ArcCapacity(arc.from, arc.to) + 1e-9) out.push_back("arc overload");
  }
  const Assignment& a = r.assignment;
  for (size_t i = 0; i < model.variables.size(); ++i) {
    const VarKey& k = model.variables[i].key;
    if (k.kind == VarKind::kColocate) {
      const bool want = a[model.PlaceVar(k.function, k.node, k.demand)] &&
                        a[model.RouteVar(k.demand, k.path)];
      if (a[i] != want) out.push_back("q != l and r: " + model.variables[i].name);
    } else if (k.kind == VarKind::kChain) {
      const int q1 = model.ColocateVar(k.function, k.node, k.path, k.demand);
      const int q2 = model.ColocateVar(k.function + 1, k.node2, k.path, k.demand);
      const bool want = q1 >= 0 && q2 >= 0 && a[q1] && a[q2];
      if (a[i] != want) out.push_back("j != q and q: " + model.variables[i].name);
    }
  }
  return out;
}

}  // namespace nfvchain::testing

#endif  // NFVCHAIN_TESTS_TEST_SUPPORT_H_
