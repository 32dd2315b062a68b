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

// Experiment orchestration: placement enumeration, strategy and memory
// sweeps over (theta, traffic) grids, and CSV serialization of the records.

#ifndef NFVCHAIN_HARNESS_H_
#define NFVCHAIN_HARNESS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nfvchain/analysis.h"
#include "nfvchain/ilp_model.h"
#include "nfvchain/topology.h"

namespace nfvchain {

enum class Family { kMiddlebox, kDcOnly, kDcNfv, kDcNfvAll, kNfvAll };

struct StrategyFamily {
  Family family = Family::kDcOnly;
  int x = 0;  // NFV subset size, kDcNfv only

  // "mb", "dc-only", "dc-nfv-<x>", "dc-nfv-all", "nfv-all".
  std::string Id() const;
  bool operator==(const StrategyFamily&) const = default;
};

// Accepts the Id() forms plus "dc-nfv" with x supplied separately.
std::optional<StrategyFamily> ParseFamily(std::string_view id, int x = 0);

struct PlacementConfig {
  // "dc=<n>;nfv=<n,n,...>" or "mb=<n:f1|f2,...>".
  std::string id;
  Strategy strategy;
  std::optional<NodeId> dc;
};

// DcOnly and DcNfvAll: one config per topology node as DC. DcNfv: every
// x-subset of the candidates crossed with every DC node. NfvAll: a single
// config. Middlebox: the chain cut into contiguous blocks of at most 3
// functions, placed on distinct candidates in every order. Throws
// Error(kArgument) when x is out of range.
std::vector<PlacementConfig> EnumeratePlacements(const Scenario& scenario,
                                                 const StrategyFamily& family,
                                                 std::span<const NodeId> candidates);

// Copy of the scenario with the config's DC applied.
Scenario ApplyPlacement(const Scenario& scenario, const PlacementConfig& config);

struct SweepRecord {
  std::string strategy;
  std::string placement;
  double theta = kUnlimited;
  double traffic_gbps = 0.0;
  double upsilon_gb = kUnlimited;
  std::string status;  // optimal, infeasible or timeout
  std::optional<double> omega;  // present iff an incumbent exists
  std::optional<double> omega_norm;
  std::optional<double> max_link_load_gbps;
  double wall_ms = 0.0;
  // Aggregate rows only.
  bool aggregate = false;
  int feasible = 0;
  int members = 0;
  // Member rows with an incumbent; not serialized.
  std::optional<PlacementSolution> solution;
  std::string error;
};

struct SweepOptions {
  int k = 3;
  SolverConfig solver;
  int workers = 0;  // 0: hardware concurrency
  // Zeroes wall times so the CSV is byte-stable.
  bool deterministic = false;
};

// One record per (strategy, placement, theta, traffic), then one mean row
// per (strategy, theta, traffic) over the placements that have an incumbent.
// omega_norm is relative to the dc-nfv-all mean of the same grid point when
// that family is part of the sweep. Candidates default to the scenario NFV
// nodes.
std::vector<SweepRecord> RunSweep(const Scenario& scenario,
                                  std::span<const StrategyFamily> families,
                                  std::span<const double> thetas,
                                  std::span<const double> traffic,
                                  const SweepOptions& options,
                                  std::span<const NodeId> candidates = {});

// DcNfv over all scenario NFV nodes with every DC, theta unlimited and the
// given memory mode enforced, per (upsilon, traffic).
std::vector<SweepRecord> MemorySweep(const Scenario& scenario,
                                     std::span<const double> upsilons,
                                     std::span<const double> traffic,
                                     MemoryMode mode, const SweepOptions& options);

inline constexpr std::string_view kCsvHeader =
    "strategy,placement,theta,traffic_gbps,upsilon_gb,status,omega,omega_norm,"
    "max_link_load_gbps,wall_ms";

// Small seeded instance for oracle cross-checks: 3 to 6 nodes, 1 to 3
// demands, chain length 1 to 3, K 1 to 3, theta in {1, 2, 4}, any strategy
// and memory mode.
struct RandomInstance {
  Scenario scenario;
  Strategy strategy;
  int k = 3;
};

RandomInstance MakeRandomInstance(uint64_t seed);

std::string FormatNumber(double value);
// Quotes fields holding commas, quotes or newlines.
std::string CsvField(const std::string& text);
std::string ToCsv(std::span<const SweepRecord> records);

}  // namespace nfvchain

#endif  // NFVCHAIN_HARNESS_H_
