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

// Compilation of a placement scenario into a pure 0-1 linear program, and the
// decoding of 0-1 assignments back into routes and function placements.
//
// Variables (all binary):
//   r[d,p]          demand d routed on candidate path p
//   l[f,v,d]        function f of demand d hosted at node v
//   q[f,v,p,d]      l[f,v,d] AND r[d,p], for hosting nodes v on path p
//   j[f,g,u,v,p,d]  q[f,u,p,d] AND q[g,v,p,d] for consecutive chain functions
//                   f -> g and (u, v) a chaining pair of path p
//
// The objective is sum r[d,p] * hops(p) * flow(d): total link bandwidth.

#ifndef NFVCHAIN_ILP_MODEL_H_
#define NFVCHAIN_ILP_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nfvchain/paths.h"
#include "nfvchain/topology.h"

namespace nfvchain {

// Service-chaining strategies.
struct Middlebox {
  // node -> functions hardwired there, in chain order.
  std::map<NodeId, std::vector<std::string>> placements;
};
struct DcOnly {};
struct DcNfv {
  std::set<NodeId> nfv_nodes;
};
struct DcNfvAll {};
struct NfvAll {};

using Strategy = std::variant<Middlebox, DcOnly, DcNfv, DcNfvAll, NfvAll>;

// "mb", "dc-only", "dc-nfv", "dc-nfv-all", "nfv-all".
std::string StrategyId(const Strategy& strategy);

// Host roles a strategy induces on a scenario. Middle-box nodes act as
// NFV nodes without compute limits; DC nodes listed in a DcNfv subset stay DC.
NodeRoles EffectiveRoles(const Scenario& scenario, const Strategy& strategy);

enum class VarKind : uint8_t { kRoute, kPlace, kColocate, kChain };

struct VarKey {
  VarKind kind = VarKind::kRoute;
  int demand = -1;
  int path = -1;
  int function = -1;   // chain index; for kChain the first of the pair
  NodeId node = 0;      // hosting node; for kChain the first of the pair
  NodeId node2 = 0;     // kChain only
};

struct Variable {
  std::string name;
  VarKey key;
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

enum class Sense : uint8_t { kLe, kEq, kGe };

struct Constraint {
  std::string name;   // LP row name
  std::string label;  // human-readable, used in diagnostics
  std::vector<Term> terms;
  Sense sense = Sense::kLe;
  double rhs = 0.0;
};

// Domain data the model was compiled from. The combinatorial solver and the
// decoder work on it; the exhaustive oracle only uses rows and variable keys.
struct ModelStructure {
  std::string strategy_id;
  std::vector<Demand> demands;
  std::vector<std::vector<Path>> paths;
  std::vector<VnfSpec> chain;  // in chain order
  std::set<NodeId> dc_nodes;
  std::set<NodeId> nfv_nodes;
  bool middlebox = false;
  // Middle-box mode: chain index -> fixed node.
  std::vector<NodeId> fixed_node;
  double theta = kUnlimited;  // kUnlimited when no core rows exist
  double upsilon_gb = kUnlimited;
  MemoryMode memory_mode = MemoryMode::kOff;
  std::map<Arc, double> arc_capacity;
};

struct IlpModel {
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  std::vector<Term> objective;  // minimized
  ModelStructure structure;

  // Variable lookups; -1 when absent.
  std::vector<std::vector<int>> route_var;                      // [d][p]
  std::map<std::tuple<int, NodeId, int>, int> place_var;        // (f, v, d)
  std::map<std::tuple<int, NodeId, int, int>, int> colocate_var;  // (f,v,p,d)
  std::map<std::tuple<int, NodeId, NodeId, int, int>, int> chain_var;  // (f,u,v,p,d)

  int RouteVar(int demand, int path) const;
  int PlaceVar(int function, NodeId node, int demand) const;
  int ColocateVar(int function, NodeId node, int path, int demand) const;
  int ChainVar(int function, NodeId u, NodeId v, int path, int demand) const;
};

// Builds the model. Throws Error(kModel) when a middle-box strategy does not
// cover every chain function exactly once (or puts more than 3 MBs on a node)
// or when a demand has no candidate path.
IlpModel Compile(const Scenario& scenario, const Strategy& strategy,
                 const PathSet& path_set);

using Assignment = std::vector<uint8_t>;

double RowActivity(const Constraint& row, const Assignment& assignment);
bool RowSatisfied(const Constraint& row, const Assignment& assignment);
double ObjectiveValue(const IlpModel& model, const Assignment& assignment);

struct FunctionPlacement {
  std::string function;
  NodeId node = 0;

  bool operator==(const FunctionPlacement&) const = default;
};

struct PlacementSolution {
  std::vector<Demand> demands;
  std::vector<int> path_index;  // per demand, index into its candidate list
  std::vector<Path> paths;      // per demand, the chosen route
  // Per demand, chain-ordered (function, node) pairs.
  std::vector<std::vector<FunctionPlacement>> placements;
  double objective = 0.0;  // Gbps x hops
};

// Checks every row, then reads back routes and placements. Throws
// Error(kValidation) naming the first violated row.
PlacementSolution DecodeSolution(const IlpModel& model,
                                 const Assignment& assignment);

// Full assignment (r, l, q, j) for the given routes and placements.
Assignment EncodeSolution(const IlpModel& model,
                          const std::vector<int>& path_index,
                          const std::vector<std::vector<NodeId>>& hosts);

// CPLEX LP text. Deterministic for a given model.
std::string LpText(const IlpModel& model);
void ExportLp(const IlpModel& model, const std::filesystem::path& path);

}  // namespace nfvchain

#endif  // NFVCHAIN_ILP_MODEL_H_
