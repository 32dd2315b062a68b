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

#include <map>
#include <set>

#include "nfvchain/error.h"
#include "nfvchain/harness.h"
#include "test_support.h"

namespace nfvchain {
namespace {

using testing::Nsfnet;

const std::vector<NodeId> kCandidates = {3, 5, 8, 10};

TEST(StrategyFamily, IdsRoundTrip) {
  for (const StrategyFamily& f :
       {StrategyFamily{Family::kMiddlebox, 0}, StrategyFamily{Family::kDcOnly, 0},
        StrategyFamily{Family::kDcNfv, 3}, StrategyFamily{Family::kDcNfvAll, 0},
        StrategyFamily{Family::kNfvAll, 0}}) {
    EXPECT_EQ(ParseFamily(f.Id()), f) << f.Id();
  }
  EXPECT_EQ(ParseFamily("dc-nfv", 2), (StrategyFamily{Family::kDcNfv, 2}));
  EXPECT_FALSE(ParseFamily("dc-nfv-x").has_value());
  EXPECT_FALSE(ParseFamily("cloud").has_value());
}

TEST(EnumeratePlacements, DcNfvTwoOfFour) {
  const Scenario s = Nsfnet();
  const auto configs = EnumeratePlacements(s, {Family::kDcNfv, 2}, kCandidates);
  std::set<std::set<NodeId>> subsets;
  std::set<std::string> ids;
  for (const auto& c : configs) {
    subsets.insert(std::get<DcNfv>(c.strategy).nfv_nodes);
    ids.insert(c.id);
    ASSERT_TRUE(c.dc.has_value());
  }
  EXPECT_EQ(subsets.size(), 6u);
  EXPECT_EQ(configs.size(), 6u * 14u);
  EXPECT_EQ(ids.size(), configs.size());
  EXPECT_EQ(configs.front().id, "dc=1;nfv=3,5");
}

TEST(EnumeratePlacements, DcOnlyIsEveryNode) {
  const auto configs = EnumeratePlacements(Nsfnet(), {Family::kDcOnly, 0}, kCandidates);
  ASSERT_EQ(configs.size(), 14u);
  for (size_t i = 0; i < configs.size(); ++i) {
    EXPECT_EQ(configs[i].id, "dc=" + std::to_string(i + 1) + ";nfv=");
  }
}

TEST(EnumeratePlacements, MiddleboxContiguousBlocks) {
  const Scenario s = Nsfnet();
  const auto configs = EnumeratePlacements(s, {Family::kMiddlebox, 0}, kCandidates);
  EXPECT_EQ(configs.size(), 264u);
  std::set<std::string> ids;
  for (const auto& c : configs) {
    ids.insert(c.id);
    const auto& mb = std::get<Middlebox>(c.strategy);
    EXPECT_GE(mb.placements.size(), 2u) << c.id;
    std::vector<std::string> walked;
    for (const auto& [node, fns] : mb.placements) {
      EXPECT_LE(fns.size(), 3u);
      EXPECT_TRUE(std::find(kCandidates.begin(), kCandidates.end(), node) != kCandidates.end());
      // Each node holds a consecutive slice of the chain.
      auto first = std::find(s.chain.begin(), s.chain.end(), fns.front());
      ASSERT_NE(first, s.chain.end());
      EXPECT_TRUE(std::equal(fns.begin(), fns.end(), first)) << c.id;
      walked.insert(walked.end(), fns.begin(), fns.end());
    }
    std::sort(walked.begin(), walked.end());
    std::vector<std::string> chain = s.chain;
    std::sort(chain.begin(), chain.end());
    EXPECT_EQ(walked, chain);
  }
  EXPECT_EQ(ids.size(), configs.size());
  EXPECT_EQ(configs.front().id, "mb=3:NAT|TS,5:AO|IPSec|WANA");
}

TEST(EnumeratePlacements, Errors) {
  const Scenario s = Nsfnet();
  EXPECT_THROW(EnumeratePlacements(s, {Family::kDcNfv, 5}, kCandidates), Error);
  const std::vector<NodeId> unknown = {99};
  EXPECT_THROW(EnumeratePlacements(s, {Family::kDcNfv, 1}, unknown), Error);
  EXPECT_EQ(EnumeratePlacements(s, {Family::kNfvAll, 0}, kCandidates).size(), 1u);
  EXPECT_EQ(EnumeratePlacements(s, {Family::kDcNfvAll, 0}, kCandidates).size(), 14u);
}

SweepOptions Quick() {
  SweepOptions o;
  o.k = 3;
  o.solver.time_limit_s = 60;
  o.deterministic = true;
  return o;
}

TEST(RunSweep, DcNfvAllBeatsDcOnlyOnAverage) {
  const Scenario s = Nsfnet();
  const std::vector<StrategyFamily> fams = {{Family::kDcOnly, 0}, {Family::kDcNfvAll, 0}};
  const std::vector<double> thetas = {192};
  const std::vector<double> traffic = {1};
  const auto records = RunSweep(s, fams, thetas, traffic, Quick());
  ASSERT_EQ(records.size(), 14u * 2u + 2u);
  std::map<std::string, double> mean;
  std::map<std::string, std::vector<double>> members;
  for (const auto& r : records) {
    if (r.aggregate) {
      ASSERT_TRUE(r.omega.has_value());
      mean[r.strategy] = *r.omega;
      EXPECT_EQ(r.placement, "mean(feasible=14/14)");
      continue;
    }
    ASSERT_EQ(r.status, "optimal") << r.placement;
    members[r.strategy].push_back(*r.omega);
    const Scenario applied = [&] {
      Scenario t = s;
      t.roles.dc_nodes = {std::stoi(r.placement.substr(3))};
      return t;
    }();
    const Strategy strategy = r.strategy == "dc-only" ? Strategy{DcOnly{}} : Strategy{DcNfvAll{}};
    EXPECT_TRUE(VerifySolution(applied, strategy, *r.solution).ok) << r.placement;
  }
  EXPECT_LE(mean.at("dc-nfv-all"), mean.at("dc-only") + 1e-9);
  for (const auto& [id, values] : members) {
    double sum = 0.0;
    for (double v : values) sum += v;
    EXPECT_NEAR(mean.at(id), sum / values.size(), 1e-9);
  }
  EXPECT_DOUBLE_EQ(records.back().omega_norm.value(), 1.0);
}

TEST(RunSweep, ByteIdenticalReruns) {
  const Scenario s = Nsfnet();
  const std::vector<StrategyFamily> fams = {{Family::kDcNfv, 1}, {Family::kDcNfvAll, 0}};
  const std::vector<double> thetas = {24, 192};
  const std::vector<double> traffic = {1, 2.5};
  SweepOptions parallel = Quick();
  parallel.workers = 3;
  const std::string a = ToCsv(RunSweep(s, fams, thetas, traffic, Quick()));
  const std::string b = ToCsv(RunSweep(s, fams, thetas, traffic, parallel));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, a.find('\n')), std::string(kCsvHeader));
}

TEST(RunSweep, MiddleboxReusedAcrossTheta) {
  const Scenario s = Nsfnet();
  const std::vector<StrategyFamily> fams = {{Family::kMiddlebox, 0}};
  const std::vector<double> thetas = {2, 192};
  const std::vector<double> traffic = {1};
  const std::vector<NodeId> cands = {3, 8};
  const auto records = RunSweep(s, fams, thetas, traffic, Quick(), cands);
  // Splits 2+3 and 3+2 over two node orders, plus one aggregate per theta.
  ASSERT_EQ(records.size(), 2u * 5u);
  std::map<std::string, std::map<double, std::optional<double>>> by_placement;
  for (const auto& r : records) by_placement[r.placement][r.theta] = r.omega;
  ASSERT_EQ(by_placement.size(), 5u);
  for (const auto& [id, omega] : by_placement) {
    ASSERT_EQ(omega.size(), 2u) << id;
    EXPECT_EQ(omega.at(2.0), omega.at(192.0)) << id;
  }
}

TEST(RunSweep, NfvAllLowThetaInfeasible) {
  const Scenario s = Nsfnet();
  const std::vector<StrategyFamily> fams = {{Family::kNfvAll, 0}};
  const std::vector<double> thetas = {2};
  const std::vector<double> traffic = {2.5, 5, 7.5, 10};
  for (const auto& r : RunSweep(s, fams, thetas, traffic, Quick())) {
    EXPECT_EQ(r.status, "infeasible") << r.traffic_gbps;
  }
}

TEST(MemorySweep, NonScalingStableOnceMemoryIsAmple) {
  const Scenario s = Nsfnet();
  const std::vector<double> ups = {64, 128, 1e6};
  const std::vector<double> traffic = {5};
  std::map<std::string, std::set<double>> per_dc;
  for (const auto& r : MemorySweep(s, ups, traffic, MemoryMode::kNonScaling, Quick())) {
    if (r.aggregate || !r.omega) continue;
    per_dc[r.placement].insert(*r.omega);
  }
  ASSERT_EQ(per_dc.size(), 14u);
  for (const auto& [id, values] : per_dc) EXPECT_EQ(values.size(), 1u) << id;
}

TEST(MemorySweep, ScalingTightMemoryInfeasible) {
  const Scenario s = Nsfnet();
  const std::vector<double> ups = {8};
  const std::vector<double> traffic = {15};
  SweepOptions o = Quick();
  o.solver.time_limit_s = 10;
  for (const auto& r : MemorySweep(s, ups, traffic, MemoryMode::kScaling, o)) {
    EXPECT_NE(r.status, "optimal") << r.placement;
  }
}

TEST(MemorySweep, ScalingWithHugeMemoryMatchesUnconstrained) {
  const Scenario s = Nsfnet();
  const std::vector<double> ups = {1e6};
  const std::vector<double> traffic = {1};
  const auto records = MemorySweep(s, ups, traffic, MemoryMode::kScaling, Quick());
  const std::vector<StrategyFamily> fams = {{Family::kDcNfv, 4}};
  const std::vector<double> thetas = {kUnlimited};
  const auto plain = RunSweep(s, fams, thetas, traffic, Quick(), kCandidates);
  ASSERT_EQ(records.size(), plain.size());
  for (size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].placement, plain[i].placement);
    EXPECT_EQ(records[i].omega, plain[i].omega) << records[i].placement;
  }
}

TEST(MemorySweep, NeedsAMemoryMode) {
  const std::vector<double> ups = {8};
  const std::vector<double> traffic = {1};
  EXPECT_THROW(MemorySweep(Nsfnet(), ups, traffic, MemoryMode::kOff, Quick()), Error);
}

TEST(Csv, FormatsAndQuotes) {
  EXPECT_EQ(FormatNumber(kUnlimited), "inf");
  EXPECT_EQ(FormatNumber(1.0), "1");
  EXPECT_EQ(FormatNumber(0.1 + 0.2), "0.3");
  EXPECT_EQ(CsvField("dc=1;nfv=3,5"), "\"dc=1;nfv=3,5\"");
  EXPECT_EQ(CsvField("dc=1;nfv="), "dc=1;nfv=");
  SweepRecord r;
  r.strategy = "dc-only";
  r.placement = "dc=4;nfv=";
  r.theta = 8;
  r.traffic_gbps = 7.5;
  r.status = "infeasible";
  const std::vector<SweepRecord> rows = {r};
  EXPECT_EQ(ToCsv(rows), std::string(kCsvHeader) + "\ndc-only,dc=4;nfv=,8,7.5,inf,infeasible,,,,0\n");
}

TEST(RandomInstance, SeededAndValid) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const RandomInstance a = MakeRandomInstance(seed);
    const RandomInstance b = MakeRandomInstance(seed);
    EXPECT_EQ(a.scenario, b.scenario);
    EXPECT_LE(a.scenario.topology.nodes().size(), 6u);
    EXPECT_LE(a.scenario.demands.size(), 3u);
    EXPECT_LE(a.scenario.chain.size(), 3u);
    EXPECT_LE(a.k, 3);
  }
}

}  // namespace
}  // namespace nfvchain
