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

// Exhaustive reference solver. Route vectors are visited in (objective,
// index vector) order; each is tested for a feasible completion by
// enumerating every 0-1 value of the placement variables l, function by
// function, deriving q and j from their defining products and checking the
// model rows as soon as all their variables are set.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include "nfvchain/error.h"
#include "nfvchain/solver.h"

namespace nfvchain {
namespace {

constexpr int kMaxPlacementBits = 20;

int Stage(const VarKey& key) {
  switch (key.kind) {
    case VarKind::kRoute:
      return -1;
    case VarKind::kPlace:
    case VarKind::kColocate:
      return key.function;
    case VarKind::kChain:
      return key.function + 1;
  }
  return -1;
}

class Oracle {
 public:
  Oracle(const IlpModel& model, const BruteForceConfig& config)
      : model_(model), config_(config), a_(model.variables.size(), 0) {
    demands_ = static_cast<int>(model.route_var.size());
    Classify();
  }

  SolveResult Run() {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::pair<double, std::vector<int>>> vectors;
    std::vector<int> idx(demands_, 0);
    bool empty = false;
    for (const auto& rv : model_.route_var) empty = empty || rv.empty();
    while (!empty) {
      double cost = 0.0;
      std::fill(a_.begin(), a_.end(), 0);
      for (int d = 0; d < demands_; ++d) a_[model_.route_var[d][idx[d]]] = 1;
      cost = ObjectiveValue(model_, a_);
      vectors.emplace_back(cost, idx);
      int d = demands_ - 1;
      while (d >= 0 && ++idx[d] == static_cast<int>(model_.route_var[d].size())) {
        idx[d] = 0;
        --d;
      }
      if (d < 0) break;
    }
    std::sort(vectors.begin(), vectors.end());

    SolveResult result;
    result.status = SolveStatus::kInfeasible;
    for (const auto& [cost, routes] : vectors) {
      if (Feasible(routes)) {
        result.status = SolveStatus::kOptimal;
        result.assignment = a_;
        result.solution = DecodeSolution(model_, a_);
        break;
      }
    }
    result.stats.nodes = checks_;
    result.stats.wall_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    return result;
  }

 private:
  struct Config {
    std::vector<int> ones;  // demand-local variables set to 1
  };

  void Classify() {
    const int nf = static_cast<int>(model_.structure.chain.size());
    place_.assign(demands_, std::vector<std::vector<int>>(nf));
    coloc_.assign(demands_, std::vector<std::vector<int>>(nf));
    chain_.assign(demands_, std::vector<std::vector<int>>(nf));
    local_rows_.assign(demands_, std::vector<std::vector<int>>(nf + 1));
    for (size_t v = 0; v < model_.variables.size(); ++v) {
      const VarKey& k = model_.variables[v].key;
      if (k.kind == VarKind::kPlace) place_[k.demand][k.function].push_back(v);
      if (k.kind == VarKind::kColocate) coloc_[k.demand][k.function].push_back(v);
      if (k.kind == VarKind::kChain) chain_[k.demand][k.function + 1].push_back(v);
    }
    for (size_t i = 0; i < model_.constraints.size(); ++i) {
      const Constraint& row = model_.constraints[i];
      std::set<int> ds;
      int stage = -1;
      bool monotone = row.sense == Sense::kLe;
      for (const Term& t : row.terms) {
        const VarKey& k = model_.variables[t.var].key;
        ds.insert(k.demand);
        stage = std::max(stage, Stage(k));
        if (t.coef < 0) monotone = false;
      }
      if (ds.size() == 1) {
        local_rows_[*ds.begin()][stage + 1].push_back(static_cast<int>(i));
      } else {
        global_rows_.push_back(static_cast<int>(i));
        if (monotone) partial_rows_.push_back(static_cast<int>(i));
      }
    }
  }

  bool RowsHold(const std::vector<int>& rows) {
    for (int i : rows) {
      ++checks_;
      if (!Satisfied(model_.constraints[i])) return false;
    }
    return true;
  }

  bool Satisfied(const Constraint& row) const {
    const double act = RowActivity(row, a_);
    switch (row.sense) {
      case Sense::kLe:
        return act <= row.rhs + config_.tolerance;
      case Sense::kGe:
        return act >= row.rhs - config_.tolerance;
      case Sense::kEq:
        return std::abs(act - row.rhs) <= config_.tolerance;
    }
    return false;
  }

  void Derive(int d, int f) {
    for (int v : coloc_[d][f]) {
      const VarKey& k = model_.variables[v].key;
      const int l = model_.PlaceVar(k.function, k.node, k.demand);
      const int r = model_.RouteVar(k.demand, k.path);
      a_[v] = (l >= 0 && r >= 0 && a_[l] && a_[r]) ? 1 : 0;
    }
    for (int v : chain_[d][f]) {
      const VarKey& k = model_.variables[v].key;
      const int q1 = model_.ColocateVar(k.function, k.node, k.path, k.demand);
      const int q2 = model_.ColocateVar(k.function + 1, k.node2, k.path, k.demand);
      a_[v] = (q1 >= 0 && q2 >= 0 && a_[q1] && a_[q2]) ? 1 : 0;
    }
  }

  void Clear(int d, int f) {
    for (int v : place_[d][f]) a_[v] = 0;
    for (int v : coloc_[d][f]) a_[v] = 0;
    for (int v : chain_[d][f]) a_[v] = 0;
  }

  void EnumerateLocal(int d, int f, std::vector<Config>& out) {
    const int nf = static_cast<int>(place_[d].size());
    if (f == nf) {
      Config c;
      for (int g = 0; g < nf; ++g) {
        for (const auto* vars : {&place_[d][g], &coloc_[d][g], &chain_[d][g]}) {
          for (int v : *vars) {
            if (a_[v]) c.ones.push_back(v);
          }
        }
      }
      out.push_back(std::move(c));
      return;
    }
    const auto& vars = place_[d][f];
    if (vars.size() > kMaxPlacementBits) {
      throw Error(ErrorKind::kGuard, "too many placement variables per function");
    }
    const uint32_t limit = uint32_t{1} << vars.size();
    for (uint32_t mask = 0; mask < limit; ++mask) {
      for (size_t b = 0; b < vars.size(); ++b) a_[vars[b]] = (mask >> b) & 1u;
      Derive(d, f);
      if (RowsHold(local_rows_[d][f + 1])) EnumerateLocal(d, f + 1, out);
    }
    Clear(d, f);
  }

  const std::vector<Config>& LocalConfigs(int d, int p) {
    auto key = std::make_pair(d, p);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<Config> configs;
    if (RowsHold(local_rows_[d][0])) EnumerateLocal(d, 0, configs);
    return cache_.emplace(key, std::move(configs)).first->second;
  }

  bool Feasible(const std::vector<int>& routes) {
    std::fill(a_.begin(), a_.end(), 0);
    for (int d = 0; d < demands_; ++d) a_[model_.route_var[d][routes[d]]] = 1;
    std::vector<const std::vector<Config>*> configs(demands_);
    for (int d = 0; d < demands_; ++d) {
      configs[d] = &LocalConfigs(d, routes[d]);
      if (configs[d]->empty()) return false;
    }
    return Combine(0, configs);
  }

  bool Combine(int d, const std::vector<const std::vector<Config>*>& configs) {
    if (!RowsHold(partial_rows_)) return false;
    if (d == demands_) return RowsHold(global_rows_);
    for (const Config& c : *configs[d]) {
      for (int v : c.ones) a_[v] = 1;
      if (Combine(d + 1, configs)) return true;
      for (int v : c.ones) a_[v] = 0;
    }
    return false;
  }

  const IlpModel& model_;
  BruteForceConfig config_;
  Assignment a_;
  int demands_ = 0;
  std::vector<std::vector<std::vector<int>>> place_;
  std::vector<std::vector<std::vector<int>>> coloc_;
  std::vector<std::vector<std::vector<int>>> chain_;
  // [demand][stage + 1] -> rows touching only that demand.
  std::vector<std::vector<std::vector<int>>> local_rows_;
  std::vector<int> global_rows_;
  std::vector<int> partial_rows_;  // global <= rows with nonnegative terms
  std::map<std::pair<int, int>, std::vector<Config>> cache_;
  uint64_t checks_ = 0;
};

}  // namespace

SolveResult BruteForce(const IlpModel& model, const BruteForceConfig& config) {
  double vectors = 1.0;
  for (const auto& rv : model.route_var) vectors *= static_cast<double>(rv.size());
  if (static_cast<int>(model.variables.size()) > config.max_variables &&
      vectors > config.max_route_vectors) {
    throw Error(ErrorKind::kGuard,
                "instance exceeds the exhaustive-search guard (" +
                    std::to_string(model.variables.size()) + " variables)");
  }
  return Oracle(model, config).Run();
}

}  // namespace nfvchain
