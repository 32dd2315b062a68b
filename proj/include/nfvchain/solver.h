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

// Exact optimization of compiled placement models.
//
// Solve() is a depth-first branch-and-bound over (route, placement) choices
// per demand. Demands are branched in descending flow order. Each node checks
// link loads and per-node compute and memory residuals, forward-checks every
// open demand and tests a max-flow relaxation of the link capacities. The
// bound is the larger of the cheapest-route sum and a Lagrangian bound whose
// multipliers on node and link capacities are tuned by subgradient steps.
// The search first dives for an incumbent, then probes with increasing
// objective cutoffs starting at the root bound. Among equal-cost optima the
// lexicographically smallest vector of route indices (demands in input
// order) is returned.
//
// BruteForce() enumerates route vectors and 0-1 placement assignments and
// checks them against the model rows directly. It is the reference the
// branch-and-bound is tested against.

#ifndef NFVCHAIN_SOLVER_H_
#define NFVCHAIN_SOLVER_H_

#include <cstdint>
#include <optional>
#include <string_view>

#include "nfvchain/ilp_model.h"

namespace nfvchain {

enum class BranchOrder : uint8_t {
  kFlowDescending,  // demands by descending flow, ties in input order
  kInputOrder,
};

struct SolverConfig {
  double time_limit_s = 0.0;  // 0: no limit
  uint64_t node_limit = 0;    // 0: no limit
  double tolerance = 1e-6;    // absolute objective gap
  // Only solutions with objective <= cutoff count; kInfeasible then means
  // none exists within the cutoff.
  double objective_cutoff = kUnlimited;
  BranchOrder branch_order = BranchOrder::kFlowDescending;
};

enum class SolveStatus : uint8_t { kOptimal, kInfeasible, kTimeout };

std::string_view StatusName(SolveStatus status);

struct SolveStats {
  uint64_t nodes = 0;
  double wall_ms = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  // Set whenever an incumbent exists (always for kOptimal).
  std::optional<PlacementSolution> solution;
  Assignment assignment;
  SolveStats stats;

  bool has_incumbent() const { return solution.has_value(); }
  double objective() const;  // NaN without an incumbent
};

SolveResult Solve(const IlpModel& model, const SolverConfig& config = {});

struct BruteForceConfig {
  int max_variables = 30;
  double max_route_vectors = 1e6;
  double tolerance = 1e-6;
};

// Throws Error(kGuard) when the model has more than max_variables binaries
// and more than max_route_vectors route vectors.
SolveResult BruteForce(const IlpModel& model, const BruteForceConfig& config = {});

}  // namespace nfvchain

#endif  // NFVCHAIN_SOLVER_H_
