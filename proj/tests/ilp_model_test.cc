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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nfvchain/error.h"
#include "nfvchain/ilp_model.h"
#include "nfvchain/solver.h"
#include "nfvchain/verify.h"
#include "test_support.h"

namespace nfvchain {
namespace {

using testing::Build;
using testing::LineScenario;
using testing::Nsfnet;

int CountRows(const IlpModel& m, const std::string& prefix) {
  int n = 0;
  for (const Constraint& c : m.constraints) n += c.name.rfind(prefix, 0) == 0;
  return n;
}

int CountVars(const IlpModel& m, VarKind kind) {
  int n = 0;
  for (const Variable& v : m.variables) n += v.key.kind == kind;
  return n;
}

TEST(Compile, TrivialLineModel) {
  const Scenario s = LineScenario();
  const IlpModel m = Build(s, DcNfv{{2}}, 1);
  EXPECT_EQ(CountVars(m, VarKind::kRoute), 1);
  EXPECT_EQ(CountVars(m, VarKind::kPlace), 1);
  EXPECT_EQ(CountVars(m, VarKind::kColocate), 1);
  EXPECT_EQ(CountVars(m, VarKind::kChain), 0);
  EXPECT_EQ(CountRows(m, "single_path_"), 1);
  EXPECT_EQ(CountRows(m, "arc_cap_"), 4);
  EXPECT_EQ(CountRows(m, "cores_"), 1);
  EXPECT_EQ(CountRows(m, "coloc_"), 3);
  EXPECT_EQ(CountRows(m, "place_"), 1);
  EXPECT_EQ(CountRows(m, "on_path_"), 1);
  const SolveResult r = Solve(m);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_DOUBLE_EQ(r.objective(), 2.0);
}

TEST(Compile, DcVariantHasNoCoreRows) {
  Scenario s = LineScenario();
  s.roles.nfv_nodes.clear();
  s.roles.dc_nodes = {2};
  const IlpModel m = Build(s, DcOnly{}, 1);
  EXPECT_EQ(CountRows(m, "cores_"), 0);
  const SolveResult r = Solve(m);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_DOUBLE_EQ(r.objective(), 2.0);
}

TEST(Compile, NsfnetVariableCountsMatchIndexDomains) {
  Scenario s = Nsfnet();
  const DcNfv strategy{{3, 5, 8, 10}};
  const NodeRoles roles = EffectiveRoles(s, strategy);
  const PathSet ps = BuildPathSet(s.topology, roles, s.demands, 5, s.chain);
  const IlpModel m = Compile(s, strategy, ps);

  std::set<NodeId> hosts = roles.dc_nodes;
  hosts.insert(roles.nfv_nodes.begin(), roles.nfv_nodes.end());
  const int fns = static_cast<int>(s.chain.size());
  int r = 0, q = 0, j = 0;
  for (const auto& list : ps.paths) {
    for (const Path& p : list) {
      ++r;
      int on = 0, pairs = 0;
      for (size_t a = 0; a < p.nodes.size(); ++a) {
        on += hosts.contains(p.nodes[a]);
        if (roles.dc_nodes.contains(p.nodes[a])) ++pairs;
        if (!roles.nfv_nodes.contains(p.nodes[a])) continue;
        for (size_t b = a; b < p.nodes.size(); ++b) pairs += hosts.contains(p.nodes[b]);
      }
      q += fns * on;
      j += (fns - 1) * pairs;
    }
  }
  EXPECT_EQ(CountVars(m, VarKind::kRoute), r);
  EXPECT_EQ(CountVars(m, VarKind::kPlace),
            static_cast<int>(s.demands.size() * fns * hosts.size()));
  EXPECT_EQ(CountVars(m, VarKind::kColocate), q);
  EXPECT_EQ(CountVars(m, VarKind::kChain), j);
  EXPECT_EQ(CountRows(m, "cores_"), 4);
}

TEST(Compile, RowsReferenceDeclaredVariables) {
  const Scenario s = Nsfnet();
  const IlpModel m = Build(s, DcNfvAll{}, 3);
  for (const Constraint& c : m.constraints) {
    for (const Term& t : c.terms) {
      ASSERT_GE(t.var, 0) << c.name;
      ASSERT_LT(t.var, static_cast<int>(m.variables.size())) << c.name;
    }
  }
  for (const Term& t : m.objective) {
    EXPECT_EQ(m.variables[t.var].key.kind, VarKind::kRoute);
  }
}

TEST(Compile, MemoryRowsFollowMode) {
  Scenario s = LineScenario();
  s.budget.upsilon_gb = 8.0;
  s.budget.memory_mode = MemoryMode::kOff;
  EXPECT_EQ(CountRows(Build(s, DcNfv{{2}}, 1), "mem_"), 0);
  s.budget.memory_mode = MemoryMode::kNonScaling;
  EXPECT_EQ(CountRows(Build(s, DcNfv{{2}}, 1), "mem_static_"), 1);
  s.budget.memory_mode = MemoryMode::kScaling;
  EXPECT_EQ(CountRows(Build(s, DcNfv{{2}}, 1), "mem_scaling_"), 1);
}

TEST(Compile, MiddleboxOmitsResourceRows) {
  Scenario s = LineScenario(1.0, 1.0, 0.5);
  s.budget.memory_mode = MemoryMode::kScaling;
  s.budget.upsilon_gb = 0.1;
  const Middlebox mb{{{2, {"A"}}}};
  const IlpModel m = Build(s, mb, 1);
  EXPECT_EQ(CountRows(m, "cores_"), 0);
  EXPECT_EQ(CountRows(m, "mem_"), 0);
  EXPECT_EQ(CountRows(m, "mb_fixed_"), 1);
  const SolveResult r = Solve(m);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(r.solution->placements[0][0].node, 2);
}

TEST(Compile, MiddleboxCoverageErrors) {
  Scenario s = LineScenario();
  s.catalog.push_back({"B", 1.0, 1.0, 0.5, false});
  s.chain = {"A", "B"};
  const PathSet ps = BuildPathSet(s.topology, {}, s.demands, 1, s.chain);
  auto kind = [&](const Middlebox& mb) {
    try {
      Compile(s, mb, ps);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kIo;
  };
  EXPECT_EQ(kind(Middlebox{{{2, {"A"}}}}), ErrorKind::kModel);
  EXPECT_EQ(kind(Middlebox{{{2, {"A", "B"}}, {3, {"B"}}}}), ErrorKind::kModel);
  EXPECT_EQ(kind(Middlebox{{{2, {"A", "C"}}}}), ErrorKind::kModel);
}

TEST(Compile, Deterministic) {
  const Scenario s = Nsfnet();
  const IlpModel a = Build(s, DcNfv{{3, 5, 8, 10}}, 3);
  const IlpModel b = Build(s, DcNfv{{3, 5, 8, 10}}, 3);
  ASSERT_EQ(a.variables.size(), b.variables.size());
  for (size_t i = 0; i < a.variables.size(); ++i) {
    EXPECT_EQ(a.variables[i].name, b.variables[i].name);
  }
  ASSERT_EQ(a.constraints.size(), b.constraints.size());
  for (size_t i = 0; i < a.constraints.size(); ++i) {
    EXPECT_EQ(a.constraints[i].name, b.constraints[i].name);
  }
  EXPECT_EQ(LpText(a), LpText(b));
}

TEST(DecodeSolution, TrivialAssignment) {
  const IlpModel m = Build(LineScenario(), DcNfv{{2}}, 1);
  const Assignment a(m.variables.size(), 1);
  const PlacementSolution sol = DecodeSolution(m, a);
  EXPECT_EQ(sol.paths[0].nodes, (std::vector<NodeId>{1, 2, 3}));
  EXPECT_EQ(sol.placements[0], (std::vector<FunctionPlacement>{{"A", 2}}));
  EXPECT_DOUBLE_EQ(sol.objective, 2.0);
}

TEST(DecodeSolution, ViolatedRowIsNamed) {
  const IlpModel m = Build(LineScenario(), DcNfv{{2}}, 1);
  Assignment a(m.variables.size(), 1);
  a[m.RouteVar(0, 0)] = 0;
  try {
    DecodeSolution(m, a);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
    EXPECT_NE(std::string(e.what()).find("demand (1,3)"), std::string::npos) << e.what();
  }
}

TEST(DecodeSolution, EncodeRoundTrip) {
  const Scenario s = Nsfnet();
  const IlpModel m = Build(s, DcNfvAll{}, 3);
  const SolveResult r = Solve(m);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  std::vector<std::vector<NodeId>> hosts;
  for (const auto& list : r.solution->placements) {
    hosts.emplace_back();
    for (const auto& fp : list) hosts.back().push_back(fp.node);
  }
  const Assignment a = EncodeSolution(m, r.solution->path_index, hosts);
  EXPECT_EQ(a, r.assignment);
  const PlacementSolution back = DecodeSolution(m, a);
  EXPECT_EQ(back.paths, r.solution->paths);
}

TEST(DecodeSolution, DcOnlyRoutesThroughDc) {
  Scenario s = Nsfnet();
  for (NodeId dc : {1, 6, 13}) {
    s.roles.dc_nodes = {dc};
    const IlpModel m = Build(s, DcOnly{}, 5);
    const SolveResult r = Solve(m);
    ASSERT_EQ(r.status, SolveStatus::kOptimal);
    for (size_t d = 0; d < s.demands.size(); ++d) {
      EXPECT_TRUE(r.solution->paths[d].Contains(dc));
      for (const auto& fp : r.solution->placements[d]) EXPECT_EQ(fp.node, dc);
    }
    EXPECT_TRUE(testing::IdentityFailures(s, DcOnly{}, m, r).empty());
  }
}

TEST(VerifySolution, ChainOrderViolation) {
  Scenario s = LineScenario();
  s.catalog.push_back({"B", 1.0, 1.0, 0.5, false});
  s.chain = {"A", "B"};
  s.roles.nfv_nodes = {1, 2, 3};
  PlacementSolution sol;
  sol.demands = s.demands;
  sol.path_index = {0};
  sol.paths = {{{1, 2, 3}}};
  sol.placements = {{{"A", 3}, {"B", 2}}};
  sol.objective = 2.0;
  const Verdict v = VerifySolution(s, NfvAll{}, sol);
  EXPECT_FALSE(v.ok);
  ASSERT_FALSE(v.violations.empty());
  EXPECT_NE(v.violations[0].find("chain order, demand (1,3)"), std::string::npos)
      << v.violations[0];
  sol.placements = {{{"A", 2}, {"B", 3}}};
  EXPECT_TRUE(VerifySolution(s, NfvAll{}, sol).ok);
}

TEST(VerifySolution, CapacityViolation) {
  Scenario s;
  s.topology = Topology({1, 2}, {{1, 2, 40.0}});
  s.roles.dc_nodes = {2};
  s.demands = {{1, 2, 48.0}};
  s.catalog = {{"A", 1.0, 1.0, 0.5, false}};
  s.chain = {"A"};
  PlacementSolution sol;
  sol.demands = s.demands;
  sol.path_index = {0};
  sol.paths = {{{1, 2}}};
  sol.placements = {{{"A", 2}}};
  sol.objective = 48.0;
  const Verdict v = VerifySolution(s, DcOnly{}, sol);
  EXPECT_FALSE(v.ok);
  bool found = false;
  for (const auto& what : v.violations) found |= what.find("capacity (1,2)") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(VerifySolution, CoreAndMemoryBudgets) {
  Scenario s = LineScenario(4.0, 1.0, 2.0);
  PlacementSolution sol;
  sol.demands = s.demands;
  sol.path_index = {0};
  sol.paths = {{{1, 2, 3}}};
  sol.placements = {{{"A", 2}}};
  sol.objective = 8.0;
  Verdict v = VerifySolution(s, DcNfv{{2}}, sol);
  ASSERT_FALSE(v.ok);
  EXPECT_EQ(v.violations[0], "cores, node 2");
  s.budget.theta = 4.0;
  s.budget.memory_mode = MemoryMode::kScaling;
  s.budget.upsilon_gb = 1.0;
  v = VerifySolution(s, DcNfv{{2}}, sol);
  ASSERT_FALSE(v.ok);
  EXPECT_EQ(v.violations[0], "scaling memory, node 2");
}

TEST(ExportLp, TrivialObjectiveLine) {
  const IlpModel m = Build(LineScenario(), DcNfv{{2}}, 1);
  const std::string text = LpText(m);
  EXPECT_NE(text.find("obj: 2 r_1_3_p0"), std::string::npos) << text;
  for (const char* section : {"Minimize", "Subject To", "Binary", "End"}) {
    EXPECT_NE(text.find(section), std::string::npos) << section;
  }
  for (const Variable& v : m.variables) {
    EXPECT_NE(text.find(v.name), std::string::npos);
  }
}

TEST(ExportLp, ByteStable) {
  const IlpModel m = Build(Nsfnet(), DcNfv{{3, 5, 8, 10}}, 2);
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "nfvchain_lp_a.lp";
  const auto b = dir / "nfvchain_lp_b.lp";
  ExportLp(m, a);
  ExportLp(m, b);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a), LpText(m));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  EXPECT_THROW(ExportLp(m, dir / "no_such_dir" / "x.lp"), Error);
}

// Round trip through an independent LP reader when one is installed.
TEST(ExportLp, ExternalReaderAgrees) {
  if (std::system("python3 -c 'import highspy' > /dev/null 2>&1") != 0) {
    GTEST_SKIP() << "highspy not installed";
  }
  Scenario s = Nsfnet();
  s.roles.dc_nodes = {6};
  const IlpModel m = Build(s, DcNfv{{3, 5, 8, 10}}, 2);
  const SolveResult r = Solve(m);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  const auto path = std::filesystem::temp_directory_path() / "nfvchain_highs.lp";
  ExportLp(m, path);
  const std::string cmd =
      "python3 -c \"import highspy,sys; h=highspy.Highs(); h.silent(); "
      "h.readModel(sys.argv[1]); h.run(); print('%.9f' % h.getInfo().objective_function_value)\" " +
      path.string();
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  char buf[128] = {0};
  const bool got = fgets(buf, sizeof(buf), pipe) != nullptr;
  pclose(pipe);
  std::filesystem::remove(path);
  ASSERT_TRUE(got);
  EXPECT_NEAR(std::stod(buf), r.objective(), 1e-6);
}

TEST(Relaxation, DroppingCoreRowsNeverHurts) {
  Scenario s = Nsfnet();
  for (double theta : {4.0, 8.0}) {
    s.budget.theta = theta;
    const SolveResult tight = Solve(Build(s, DcNfv{{3, 5, 8, 10}}, 3));
    s.budget.theta = kUnlimited;
    const SolveResult loose = Solve(Build(s, DcNfv{{3, 5, 8, 10}}, 3));
    ASSERT_EQ(loose.status, SolveStatus::kOptimal);
    if (tight.status == SolveStatus::kOptimal) {
      EXPECT_LE(loose.objective(), tight.objective() + 1e-9);
    }
  }
}

}  // namespace
}  // namespace nfvchain
