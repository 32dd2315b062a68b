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

#include "nfvchain/ilp_model.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nfvchain/error.h"

namespace nfvchain {
namespace {

constexpr double kRowTolerance = 1e-9;

std::string Sanitize(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  }
  return out;
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string DemandTag(const Demand& d) {
  return std::to_string(d.source) + "_" + std::to_string(d.dest);
}

std::string DemandLabel(const Demand& d) {
  return "demand (" + std::to_string(d.source) + "," + std::to_string(d.dest) + ")";
}

class ModelBuilder {
 public:
  explicit ModelBuilder(IlpModel* model) : model_(model) {}

  int AddVar(std::string name, VarKey key) {
    model_->variables.push_back({std::move(name), key});
    return static_cast<int>(model_->variables.size()) - 1;
  }

  void AddRow(std::string name, std::string label, std::vector<Term> terms,
              Sense sense, double rhs) {
    model_->constraints.push_back(
        {std::move(name), std::move(label), std::move(terms), sense, rhs});
  }

 private:
  IlpModel* model_;
};

void CheckMiddlebox(const Scenario& scenario, const Middlebox& mb) {
  std::map<std::string, int> seen;
  for (const auto& [node, fns] : mb.placements) {
    if (!scenario.topology.HasNode(node)) {
      throw Error(ErrorKind::kModel, "middle-box node " + std::to_string(node) + " unknown");
    }
    if (fns.size() > 3) {
      throw Error(ErrorKind::kModel,
                  "middle-box node " + std::to_string(node) + " holds more than 3 MBs");
    }
    for (const std::string& f : fns) ++seen[f];
  }
  for (const std::string& f : scenario.chain) {
    if (seen[f] != 1) {
      throw Error(ErrorKind::kModel, "middle-box placement must cover '" + f +
                                         "' exactly once (found " +
                                         std::to_string(seen[f]) + ")");
    }
  }
  for (const auto& [f, count] : seen) {
    if (std::find(scenario.chain.begin(), scenario.chain.end(), f) ==
        scenario.chain.end()) {
      throw Error(ErrorKind::kModel, "middle-box function '" + f + "' not in chain");
    }
  }
}

}  // namespace

std::string StrategyId(const Strategy& strategy) {
  struct Visitor {
    std::string operator()(const Middlebox&) const { return "mb"; }
    std::string operator()(const DcOnly&) const { return "dc-only"; }
    std::string operator()(const DcNfv&) const { return "dc-nfv"; }
    std::string operator()(const DcNfvAll&) const { return "dc-nfv-all"; }
    std::string operator()(const NfvAll&) const { return "nfv-all"; }
  };
  return std::visit(Visitor{}, strategy);
}

NodeRoles EffectiveRoles(const Scenario& scenario, const Strategy& strategy) {
  NodeRoles roles;
  const auto& all = scenario.topology.nodes();
  if (const auto* mb = std::get_if<Middlebox>(&strategy)) {
    roles.mb_locations = mb->placements;
    for (const auto& [node, fns] : mb->placements) roles.nfv_nodes.insert(node);
  } else if (std::holds_alternative<DcOnly>(strategy)) {
    roles.dc_nodes = scenario.roles.dc_nodes;
  } else if (const auto* dn = std::get_if<DcNfv>(&strategy)) {
    roles.dc_nodes = scenario.roles.dc_nodes;
    for (NodeId n : dn->nfv_nodes) {
      if (!scenario.topology.HasNode(n)) {
        throw Error(ErrorKind::kModel, "nfv node " + std::to_string(n) + " unknown");
      }
      if (!roles.dc_nodes.contains(n)) roles.nfv_nodes.insert(n);
    }
  } else if (std::holds_alternative<DcNfvAll>(strategy)) {
    roles.dc_nodes = scenario.roles.dc_nodes;
    for (NodeId n : all) {
      if (!roles.dc_nodes.contains(n)) roles.nfv_nodes.insert(n);
    }
  } else {
    roles.nfv_nodes.insert(all.begin(), all.end());
  }
  return roles;
}

int IlpModel::RouteVar(int demand, int path) const {
  if (demand < 0 || demand >= static_cast<int>(route_var.size())) return -1;
  const auto& row = route_var[demand];
  if (path < 0 || path >= static_cast<int>(row.size())) return -1;
  return row[path];
}

int IlpModel::PlaceVar(int function, NodeId node, int demand) const {
  auto it = place_var.find({function, node, demand});
  return it == place_var.end() ? -1 : it->second;
}

int IlpModel::ColocateVar(int function, NodeId node, int path, int demand) const {
  auto it = colocate_var.find({function, node, path, demand});
  return it == colocate_var.end() ? -1 : it->second;
}

int IlpModel::ChainVar(int function, NodeId u, NodeId v, int path, int demand) const {
  auto it = chain_var.find({function, u, v, path, demand});
  return it == chain_var.end() ? -1 : it->second;
}

IlpModel Compile(const Scenario& scenario, const Strategy& strategy,
                 const PathSet& path_set) {
  const auto* mb = std::get_if<Middlebox>(&strategy);
  if (mb) CheckMiddlebox(scenario, *mb);
  const NodeRoles roles = EffectiveRoles(scenario, strategy);
  const auto& demands = scenario.demands;
  if (path_set.paths.size() != demands.size()) {
    throw Error(ErrorKind::kModel, "path set does not match the demand list");
  }
  for (size_t d = 0; d < demands.size(); ++d) {
    if (path_set.paths[d].empty()) {
      throw Error(ErrorKind::kModel, DemandLabel(demands[d]) + " has no candidate path");
    }
  }

  IlpModel model;
  ModelBuilder b(&model);
  ModelStructure& st = model.structure;
  st.strategy_id = StrategyId(strategy);
  st.demands = demands;
  st.paths = path_set.paths;
  for (const std::string& f : scenario.chain) st.chain.push_back(scenario.Vnf(f));
  st.dc_nodes = roles.dc_nodes;
  st.nfv_nodes = roles.nfv_nodes;
  st.middlebox = mb != nullptr;
  if (mb) {
    st.fixed_node.assign(scenario.chain.size(), 0);
    for (const auto& [node, fns] : mb->placements) {
      for (const std::string& f : fns) {
        auto it = std::find(scenario.chain.begin(), scenario.chain.end(), f);
        st.fixed_node[it - scenario.chain.begin()] = node;
      }
    }
  } else {
    st.theta = scenario.budget.theta;
    st.upsilon_gb = scenario.budget.upsilon_gb;
    st.memory_mode = scenario.budget.memory_mode;
  }
  for (const Arc& arc : scenario.topology.Arcs()) {
    st.arc_capacity[arc] = *scenario.topology.ArcCapacity(arc.from, arc.to);
  }

  std::set<NodeId> hosting = roles.dc_nodes;
  hosting.insert(roles.nfv_nodes.begin(), roles.nfv_nodes.end());
  const int num_fns = static_cast<int>(st.chain.size());
  std::vector<std::string> fname;
  for (const VnfSpec& v : st.chain) fname.push_back(Sanitize(v.name));

  // Variables.
  model.route_var.resize(demands.size());
  for (size_t d = 0; d < demands.size(); ++d) {
    const std::string tag = DemandTag(demands[d]);
    for (size_t p = 0; p < path_set.paths[d].size(); ++p) {
      VarKey key{VarKind::kRoute, static_cast<int>(d), static_cast<int>(p)};
      model.route_var[d].push_back(
          b.AddVar("r_" + tag + "_p" + std::to_string(p), key));
    }
  }
  for (size_t d = 0; d < demands.size(); ++d) {
    const std::string tag = DemandTag(demands[d]);
    for (int f = 0; f < num_fns; ++f) {
      for (NodeId v : hosting) {
        VarKey key{VarKind::kPlace, static_cast<int>(d), -1, f, v};
        model.place_var[{f, v, static_cast<int>(d)}] = b.AddVar(
            "l_" + fname[f] + "_" + std::to_string(v) + "_" + tag, key);
      }
    }
  }
  for (size_t d = 0; d < demands.size(); ++d) {
    const std::string tag = DemandTag(demands[d]);
    for (size_t p = 0; p < path_set.paths[d].size(); ++p) {
      const std::string ptag = "_p" + std::to_string(p) + "_" + tag;
      for (int f = 0; f < num_fns; ++f) {
        for (NodeId v : path_set.paths[d][p].nodes) {
          if (!hosting.contains(v)) continue;
          VarKey key{VarKind::kColocate, static_cast<int>(d), static_cast<int>(p), f, v};
          model.colocate_var[{f, v, static_cast<int>(p), static_cast<int>(d)}] =
              b.AddVar("q_" + fname[f] + "_" + std::to_string(v) + ptag, key);
        }
      }
      for (int f = 0; f + 1 < num_fns; ++f) {
        for (const NodePair& pair : path_set.chain_pairs[d][p]) {
          VarKey key{VarKind::kChain, static_cast<int>(d), static_cast<int>(p), f,
                     pair.first, pair.second};
          model.chain_var[{f, pair.first, pair.second, static_cast<int>(p),
                           static_cast<int>(d)}] =
              b.AddVar("j_" + fname[f] + "_" + fname[f + 1] + "_" +
                           std::to_string(pair.first) + "_" +
                           std::to_string(pair.second) + ptag,
                       key);
        }
      }
    }
  }

  // Objective: bandwidth x hops.
  for (size_t d = 0; d < demands.size(); ++d) {
    for (size_t p = 0; p < path_set.paths[d].size(); ++p) {
      model.objective.push_back(
          {model.route_var[d][p], path_set.paths[d][p].length() * demands[d].gbps});
    }
  }

  // One path per demand.
  for (size_t d = 0; d < demands.size(); ++d) {
    std::vector<Term> terms;
    for (int var : model.route_var[d]) terms.push_back({var, 1.0});
    b.AddRow("single_path_" + DemandTag(demands[d]),
             "single path, " + DemandLabel(demands[d]), std::move(terms),
             Sense::kEq, 1.0);
  }

  // Link capacity per directed arc.
  for (const auto& [arc, cap] : st.arc_capacity) {
    std::vector<Term> terms;
    if (auto it = path_set.link_index.find(arc); it != path_set.link_index.end()) {
      for (const PathRef& ref : it->second) {
        terms.push_back({model.route_var[ref.demand][ref.path], demands[ref.demand].gbps});
      }
    }
    const std::string a = std::to_string(arc.from) + "_" + std::to_string(arc.to);
    b.AddRow("arc_cap_" + a,
             "capacity (" + std::to_string(arc.from) + "," + std::to_string(arc.to) + ")",
             std::move(terms), Sense::kLe, cap);
  }

  // Compute and memory budgets on NFV nodes.
  if (!mb) {
    auto node_rows = [&](const char* prefix, const char* what, double rhs,
                         auto coefficient) {
      for (NodeId v : roles.nfv_nodes) {
        std::vector<Term> terms;
        for (size_t d = 0; d < demands.size(); ++d) {
          for (int f = 0; f < num_fns; ++f) {
            const double c = coefficient(demands[d], st.chain[f]);
            if (c != 0.0) {
              terms.push_back({model.PlaceVar(f, v, static_cast<int>(d)), c});
            }
          }
        }
        b.AddRow(prefix + std::to_string(v), std::string(what) + ", node " + std::to_string(v),
                 std::move(terms), Sense::kLe, rhs);
      }
    };
    if (!std::isinf(st.theta)) {
      node_rows("cores_", "cores", st.theta, [](const Demand& d, const VnfSpec& f) {
        return d.gbps * f.cores_per_gbps;
      });
    }
    if (st.memory_mode == MemoryMode::kNonScaling && !std::isinf(st.upsilon_gb)) {
      node_rows("mem_static_", "static memory", st.upsilon_gb,
                [](const Demand&, const VnfSpec& f) { return f.install_mem_gb; });
    }
    if (st.memory_mode == MemoryMode::kScaling && !std::isinf(st.upsilon_gb)) {
      node_rows("mem_scaling_", "scaling memory", st.upsilon_gb,
                [](const Demand& d, const VnfSpec& f) { return d.gbps * f.mem_per_gbps; });
    }
  }

  // Per-demand chaining rows.
  for (size_t di = 0; di < demands.size(); ++di) {
    const int d = static_cast<int>(di);
    const std::string tag = DemandTag(demands[d]);
    const std::string dlabel = DemandLabel(demands[d]);
    const auto& paths = path_set.paths[d];

    // q = l AND r.
    for (size_t pi = 0; pi < paths.size(); ++pi) {
      const int p = static_cast<int>(pi);
      const int r = model.route_var[d][p];
      for (int f = 0; f < num_fns; ++f) {
        for (NodeId v : paths[p].nodes) {
          if (!hosting.contains(v)) continue;
          const int q = model.ColocateVar(f, v, p, d);
          const int l = model.PlaceVar(f, v, d);
          const std::string suffix = fname[f] + "_" + std::to_string(v) + "_p" +
                                     std::to_string(p) + "_" + tag;
          const std::string label = "co-location " + st.chain[f].name + " at " +
                                    std::to_string(v) + " on path " +
                                    std::to_string(p) + ", " + dlabel;
          b.AddRow("coloc_le_place_" + suffix, label, {{q, 1.0}, {l, -1.0}},
                   Sense::kLe, 0.0);
          b.AddRow("coloc_le_route_" + suffix, label, {{q, 1.0}, {r, -1.0}},
                   Sense::kLe, 0.0);
          b.AddRow("coloc_ge_" + suffix, label, {{q, 1.0}, {l, -1.0}, {r, -1.0}},
                   Sense::kGe, -1.0);
        }
      }
    }

    // Every function is met on some candidate path.
    for (int f = 0; f < num_fns; ++f) {
      std::vector<Term> terms;
      for (size_t p = 0; p < paths.size(); ++p) {
        for (NodeId v : paths[p].nodes) {
          if (hosting.contains(v)) {
            terms.push_back({model.ColocateVar(f, v, static_cast<int>(p), d), 1.0});
          }
        }
      }
      b.AddRow("place_" + fname[f] + "_" + tag,
               "placement of " + st.chain[f].name + ", " + dlabel, std::move(terms),
               Sense::kGe, 1.0);
    }

    for (size_t pi = 0; pi < paths.size(); ++pi) {
      const int p = static_cast<int>(pi);
      const auto& pairs = path_set.chain_pairs[d][p];
      const std::string ptag = "_p" + std::to_string(p) + "_" + tag;
      const std::string plabel = " on path " + std::to_string(p) + ", " + dlabel;
      for (int f = 0; f + 1 < num_fns; ++f) {
        const std::string fpair = fname[f] + "_" + fname[f + 1];
        const std::string lpair = st.chain[f].name + "->" + st.chain[f + 1].name;
        // Once a function sits in a DC, its successor sits in the same DC.
        for (NodeId u : paths[p].nodes) {
          if (!roles.dc_nodes.contains(u)) continue;
          b.AddRow("dc_chain_" + fpair + "_" + std::to_string(u) + ptag,
                   "dc chaining " + lpair + " at " + std::to_string(u) + plabel,
                   {{model.ChainVar(f, u, u, p, d), 1.0},
                    {model.ColocateVar(f, u, p, d), -1.0}},
                   Sense::kGe, 0.0);
        }
        // j = q(f, u) AND q(f+1, v).
        for (const NodePair& pair : pairs) {
          const int j = model.ChainVar(f, pair.first, pair.second, p, d);
          const int q1 = model.ColocateVar(f, pair.first, p, d);
          const int q2 = model.ColocateVar(f + 1, pair.second, p, d);
          const std::string suffix = fpair + "_" + std::to_string(pair.first) + "_" +
                                     std::to_string(pair.second) + ptag;
          const std::string label = "chain link " + lpair + " (" +
                                    std::to_string(pair.first) + "," +
                                    std::to_string(pair.second) + ")" + plabel;
          b.AddRow("chain_le_first_" + suffix, label, {{j, 1.0}, {q1, -1.0}},
                   Sense::kLe, 0.0);
          b.AddRow("chain_le_second_" + suffix, label, {{j, 1.0}, {q2, -1.0}},
                   Sense::kLe, 0.0);
          b.AddRow("chain_ge_" + suffix, label, {{j, 1.0}, {q1, -1.0}, {q2, -1.0}},
                   Sense::kGe, -1.0);
        }
        // Exactly one chaining pair on each path.
        std::vector<Term> exact;
        for (const NodePair& pair : pairs) {
          exact.push_back({model.ChainVar(f, pair.first, pair.second, p, d), 1.0});
        }
        b.AddRow("chain_exact_" + fpair + ptag, "chain exactness " + lpair + plabel,
                 std::move(exact), Sense::kLe, 1.0);
      }
      // A later link f2 -> f3 out of u needs an earlier link f1 -> f2 into u.
      for (int f = 0; f + 2 < num_fns; ++f) {
        for (const NodePair& later : pairs) {
          if (!roles.nfv_nodes.contains(later.first)) continue;
          const NodeId u = later.first;
          const int upos = *paths[p].PositionOf(u);
          std::vector<Term> terms;
          for (int t = 0; t <= upos; ++t) {
            const NodeId tn = paths[p].nodes[t];
            if (!roles.nfv_nodes.contains(tn)) continue;
            terms.push_back({model.ChainVar(f, tn, u, p, d), 1.0});
          }
          terms.push_back({model.ChainVar(f + 1, u, later.second, p, d), -1.0});
          b.AddRow("chain_carry_" + fname[f] + "_" + fname[f + 1] + "_" + fname[f + 2] +
                       "_" + std::to_string(u) + "_" + std::to_string(later.second) + ptag,
                   "chain carry " + st.chain[f].name + "->" + st.chain[f + 1].name +
                       "->" + st.chain[f + 2].name + " at " + std::to_string(u) + plabel,
                   std::move(terms), Sense::kGe, 0.0);
        }
      }
    }

    // Chaining link realized on some candidate path.
    for (int f = 0; f + 1 < num_fns; ++f) {
      std::vector<Term> terms;
      for (size_t p = 0; p < paths.size(); ++p) {
        for (const NodePair& pair : path_set.chain_pairs[d][p]) {
          terms.push_back(
              {model.ChainVar(f, pair.first, pair.second, static_cast<int>(p), d), 1.0});
        }
      }
      b.AddRow("chain_exists_" + fname[f] + "_" + fname[f + 1] + "_" + tag,
               "chain link " + st.chain[f].name + "->" + st.chain[f + 1].name + ", " +
                   dlabel,
               std::move(terms), Sense::kGe, 1.0);
    }

    // A function may only be hosted on the route actually taken.
    for (int f = 0; f < num_fns; ++f) {
      for (NodeId v : hosting) {
        std::vector<Term> terms = {{model.PlaceVar(f, v, d), 1.0}};
        for (size_t p = 0; p < paths.size(); ++p) {
          if (paths[p].Contains(v)) terms.push_back({model.route_var[d][p], -1.0});
        }
        b.AddRow("on_path_" + fname[f] + "_" + std::to_string(v) + "_" + tag,
                 st.chain[f].name + " at " + std::to_string(v) + " off route, " + dlabel,
                 std::move(terms), Sense::kLe, 0.0);
      }
    }

    if (mb) {
      for (int f = 0; f < num_fns; ++f) {
        for (NodeId v : hosting) {
          const double fixed = st.fixed_node[f] == v ? 1.0 : 0.0;
          b.AddRow("mb_fixed_" + fname[f] + "_" + std::to_string(v) + "_" + tag,
                   "middle-box " + st.chain[f].name + " at " + std::to_string(v) +
                       ", " + dlabel,
                   {{model.PlaceVar(f, v, d), 1.0}}, Sense::kEq, fixed);
        }
      }
    }
  }
  return model;
}

double RowActivity(const Constraint& row, const Assignment& assignment) {
  double lhs = 0.0;
  for (const Term& t : row.terms) lhs += t.coef * assignment[t.var];
  return lhs;
}

bool RowSatisfied(const Constraint& row, const Assignment& assignment) {
  const double lhs = RowActivity(row, assignment);
  switch (row.sense) {
    case Sense::kLe:
      return lhs <= row.rhs + kRowTolerance;
    case Sense::kGe:
      return lhs >= row.rhs - kRowTolerance;
    case Sense::kEq:
      return std::abs(lhs - row.rhs) <= kRowTolerance;
  }
  return false;
}

double ObjectiveValue(const IlpModel& model, const Assignment& assignment) {
  double total = 0.0;
  for (const Term& t : model.objective) total += t.coef * assignment[t.var];
  return total;
}

PlacementSolution DecodeSolution(const IlpModel& model,
                                 const Assignment& assignment) {
  if (assignment.size() != model.variables.size()) {
    throw Error(ErrorKind::kValidation, "assignment does not cover every variable");
  }
  for (uint8_t v : assignment) {
    if (v > 1) throw Error(ErrorKind::kValidation, "assignment is not 0-1");
  }
  for (const Constraint& row : model.constraints) {
    if (!RowSatisfied(row, assignment)) {
      throw Error(ErrorKind::kValidation, "violated row: " + row.label);
    }
  }

  const ModelStructure& st = model.structure;
  PlacementSolution sol;
  sol.demands = st.demands;
  for (size_t d = 0; d < st.demands.size(); ++d) {
    int chosen = -1;
    for (size_t p = 0; p < st.paths[d].size(); ++p) {
      if (assignment[model.route_var[d][p]]) chosen = static_cast<int>(p);
    }
    sol.path_index.push_back(chosen);
    sol.paths.push_back(st.paths[d][chosen]);
    std::vector<FunctionPlacement> placed;
    for (size_t f = 0; f < st.chain.size(); ++f) {
      for (NodeId v : st.paths[d][chosen].nodes) {
        const int q = model.ColocateVar(static_cast<int>(f), v, chosen,
                                        static_cast<int>(d));
        if (q >= 0 && assignment[q]) placed.push_back({st.chain[f].name, v});
      }
    }
    sol.placements.push_back(std::move(placed));
  }
  sol.objective = ObjectiveValue(model, assignment);
  return sol;
}

Assignment EncodeSolution(const IlpModel& model, const std::vector<int>& path_index,
                          const std::vector<std::vector<NodeId>>& hosts) {
  Assignment a(model.variables.size(), 0);
  for (size_t i = 0; i < model.variables.size(); ++i) {
    const VarKey& k = model.variables[i].key;
    switch (k.kind) {
      case VarKind::kRoute:
        a[i] = path_index[k.demand] == k.path;
        break;
      case VarKind::kPlace:
        a[i] = hosts[k.demand][k.function] == k.node;
        break;
      case VarKind::kColocate:
        a[i] = path_index[k.demand] == k.path && hosts[k.demand][k.function] == k.node;
        break;
      case VarKind::kChain:
        a[i] = path_index[k.demand] == k.path &&
               hosts[k.demand][k.function] == k.node &&
               hosts[k.demand][k.function + 1] == k.node2;
        break;
    }
  }
  return a;
}

std::string LpText(const IlpModel& model) {
  std::ostringstream out;
  const auto& vars = model.variables;
  auto write_terms = [&](const std::vector<Term>& terms) {
    if (terms.empty()) {
      out << " 0 " << vars.front().name;
      return;
    }
    int on_line = 0;
    bool first = true;
    for (const Term& t : terms) {
      if (on_line == 8) {
        out << "\n  ";
        on_line = 0;
      }
      double c = t.coef;
      if (first) {
        if (c < 0) {
          out << " -";
          c = -c;
        }
      } else {
        out << (c < 0 ? " - " : " + ");
        c = std::abs(c);
      }
      out << (first && t.coef >= 0 ? " " : "");
      if (c != 1.0) out << Num(c) << " ";
      out << vars[t.var].name;
      first = false;
      ++on_line;
    }
  };

  out << "\\ nfvchain placement model, strategy " << model.structure.strategy_id << "\n";
  out << "Minimize\n obj:";
  write_terms(model.objective);
  out << "\nSubject To\n";
  for (const Constraint& row : model.constraints) {
    out << " " << row.name << ":";
    write_terms(row.terms);
    switch (row.sense) {
      case Sense::kLe:
        out << " <= ";
        break;
      case Sense::kGe:
        out << " >= ";
        break;
      case Sense::kEq:
        out << " = ";
        break;
    }
    out << Num(row.rhs) << "\n";
  }
  out << "Binary\n";
  for (const Variable& v : vars) out << " " << v.name << "\n";
  out << "End\n";
  return out.str();
}

void ExportLp(const IlpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << LpText(model);
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

}  // namespace nfvchain
