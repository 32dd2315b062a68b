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

// Post-solve metrics and analyses that need many solves: link loads, the
// shortest-path bound, DC congestion sweeps and core-count inflection points.

#ifndef NFVCHAIN_ANALYSIS_H_
#define NFVCHAIN_ANALYSIS_H_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "nfvchain/ilp_model.h"
#include "nfvchain/solver.h"
#include "nfvchain/topology.h"

namespace nfvchain {

// Total bandwidth consumed: sum of hops x flow over the chosen routes.
double ResourceConsumption(const PlacementSolution& solution);

struct LoadProfile {
  std::map<Arc, double> loads;  // every directed arc of the topology
  double max_load = 0.0;
  double mean_load = 0.0;
  double total = 0.0;
};

LoadProfile LinkLoads(const PlacementSolution& solution, const Topology& topology);

// Sum of flow x shortest hop count. Throws Error(kModel) for a disconnected
// demand.
double ShortestPathBound(const Topology& topology, std::span<const Demand> demands);

struct InstanceOptions {
  int k = 5;
  SolverConfig solver;
};

// Builds candidate paths, compiles and solves one instance. The compiled
// model is handed back through model_out when given.
SolveResult SolveInstance(const Scenario& scenario, const Strategy& strategy,
                          const InstanceOptions& options,
                          IlpModel* model_out = nullptr);

// Runs body(0..count-1) on up to `workers` threads (0: hardware threads).
void ParallelFor(size_t count, int workers, const std::function<void(size_t)>& body);

enum class Feasibility { kFeasible, kInfeasible, kUnknown };

struct CongestionReport {
  std::vector<double> traffic;
  std::vector<NodeId> candidates;
  // Per traffic value, per candidate DC node.
  std::vector<std::map<NodeId, Feasibility>> status;
  std::vector<int> infeasible_count;
  // Smallest traffic at which every candidate is infeasible.
  std::optional<double> congestion_point;
  // False when a node turned feasible again at higher traffic.
  bool monotone = true;
  std::vector<std::string> warnings;

  std::set<NodeId> Infeasible(size_t index) const;
  std::set<NodeId> NewlyInfeasible(size_t index) const;
};

// DC-only feasibility of every candidate DC node at every average traffic
// value (ascending). Timeouts are reported as unknown and do not count
// towards the congestion point.
CongestionReport CongestionSweep(const Scenario& scenario,
                                 std::span<const double> traffic,
                                 std::span<const NodeId> candidates,
                                 const InstanceOptions& options, int workers = 0);

struct InflectionProbe {
  double theta = 0.0;
  SolveStatus status = SolveStatus::kInfeasible;
  bool at_bound = false;
  // False when neither search settled whether the bound is reachable.
  bool decided = true;
  double objective = 0.0;  // NaN without an incumbent
};

struct InflectionResult {
  double bound = 0.0;
  // Smallest theta proven at the bound; nullopt: none in range. Undecided
  // earlier probes set any_unknown.
  std::optional<double> theta;
  std::vector<InflectionProbe> probes;
  bool any_infeasible = false;
  bool any_unknown = false;  // some probe undecided
};

// Smallest core budget (ascending list) at which the optimum meets the
// shortest-path bound.
// With classify unset, points off the bound keep the cutoff search status and
// no objective.
InflectionResult InflectionPoint(const Scenario& scenario, const Strategy& strategy,
                                 std::span<const double> thetas,
                                 const InstanceOptions& options, bool classify = true);

// series[key] / series[baseline]. Throws Error(kArgument) for a missing or
// non-positive baseline.
std::map<std::string, double> Normalize(const std::map<std::string, double>& series,
                                        const std::string& baseline);

}  // namespace nfvchain

#endif  // NFVCHAIN_ANALYSIS_H_
