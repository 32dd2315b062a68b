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

#include "nfvchain/verify.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace nfvchain {
namespace {

constexpr double kSlack = 1e-9;

std::string Pair(NodeId a, NodeId b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

Verdict VerifySolution(const Scenario& scenario, const Strategy& strategy,
                       const PlacementSolution& solution) {
  Verdict verdict;
  auto fail = [&](std::string what) {
    verdict.ok = false;
    verdict.violations.push_back(std::move(what));
  };

  const Topology& topo = scenario.topology;
  std::set<NodeId> dc;
  std::set<NodeId> nfv;
  std::map<std::string, NodeId> mb_at;
  const auto* mb = std::get_if<Middlebox>(&strategy);
  if (mb) {
    for (const auto& [node, fns] : mb->placements) {
      for (const auto& f : fns) mb_at[f] = node;
    }
  } else if (std::holds_alternative<NfvAll>(strategy)) {
    nfv.insert(topo.nodes().begin(), topo.nodes().end());
  } else {
    dc = scenario.roles.dc_nodes;
    if (const auto* dn = std::get_if<DcNfv>(&strategy)) {
      for (NodeId n : dn->nfv_nodes) {
        if (!dc.contains(n)) nfv.insert(n);
      }
    } else if (std::holds_alternative<DcNfvAll>(strategy)) {
      for (NodeId n : topo.nodes()) {
        if (!dc.contains(n)) nfv.insert(n);
      }
    }
  }

  if (solution.paths.size() != scenario.demands.size() ||
      solution.placements.size() != scenario.demands.size()) {
    fail("solution does not cover every demand");
    return verdict;
  }

  std::map<Arc, double> load;
  std::map<NodeId, double> cores;
  std::map<NodeId, double> mem_static;
  std::map<NodeId, double> mem_scaling;

  for (size_t d = 0; d < scenario.demands.size(); ++d) {
    const Demand& dem = scenario.demands[d];
    const std::string who = "demand " + Pair(dem.source, dem.dest);
    const std::vector<NodeId>& route = solution.paths[d].nodes;

    if (route.empty() || route.front() != dem.source || route.back() != dem.dest) {
      fail("route endpoints, " + who);
      continue;
    }
    if (std::set<NodeId>(route.begin(), route.end()).size() != route.size()) {
      fail("route repeats a node, " + who);
    }
    for (size_t i = 0; i + 1 < route.size(); ++i) {
      if (!topo.ArcCapacity(route[i], route[i + 1])) {
        fail("route uses a missing link " + Pair(route[i], route[i + 1]) + ", " + who);
      } else {
        load[{route[i], route[i + 1]}] += dem.gbps;
      }
    }

    // Walk the chain along the route.
    const auto& placed = solution.placements[d];
    std::vector<const FunctionPlacement*> by_function;
    bool complete = true;
    for (const std::string& f : scenario.chain) {
      const FunctionPlacement* hit = nullptr;
      int count = 0;
      for (const auto& fp : placed) {
        if (fp.function == f) {
          hit = &fp;
          ++count;
        }
      }
      if (count != 1) {
        fail("function " + f + " hosted " + std::to_string(count) + " times, " + who);
        complete = false;
      }
      by_function.push_back(hit);
    }
    if (placed.size() != scenario.chain.size()) complete = false;
    if (!complete) continue;

    int last_pos = -1;
    NodeId in_dc = 0;
    for (size_t k = 0; k < scenario.chain.size(); ++k) {
      const std::string& f = scenario.chain[k];
      const NodeId host = by_function[k]->node;
      auto it = std::find(route.begin(), route.end(), host);
      if (it == route.end()) {
        fail("function " + f + " off route, " + who);
        continue;
      }
      const int pos = static_cast<int>(it - route.begin());
      if (pos < last_pos) fail("chain order, " + who);
      last_pos = pos;
      if (in_dc != 0 && host != in_dc) fail("chain leaves DC " + std::to_string(in_dc) + ", " + who);
      if (mb) {
        auto at = mb_at.find(f);
        if (at == mb_at.end() || at->second != host) {
          fail("function " + f + " not at its middle-box, " + who);
        }
        continue;
      }
      if (dc.contains(host)) {
        in_dc = host;
      } else if (nfv.contains(host)) {
        const VnfSpec& spec = scenario.Vnf(f);
        cores[host] += dem.gbps * spec.cores_per_gbps;
        mem_static[host] += spec.install_mem_gb;
        mem_scaling[host] += dem.gbps * spec.mem_per_gbps;
      } else {
        fail("function " + f + " at non-hosting node " + std::to_string(host) + ", " + who);
      }
    }
  }

  for (const auto& [arc, gbps] : load) {
    if (gbps > *topo.ArcCapacity(arc.from, arc.to) + kSlack) {
      fail("capacity " + Pair(arc.from, arc.to));
    }
  }
  if (!mb) {
    const ResourceBudget& budget = scenario.budget;
    for (const auto& [node, used] : cores) {
      if (used > budget.theta + kSlack) fail("cores, node " + std::to_string(node));
    }
    if (budget.memory_mode == MemoryMode::kNonScaling) {
      for (const auto& [node, used] : mem_static) {
        if (used > budget.upsilon_gb + kSlack) fail("static memory, node " + std::to_string(node));
      }
    }
    if (budget.memory_mode == MemoryMode::kScaling) {
      for (const auto& [node, used] : mem_scaling) {
        if (used > budget.upsilon_gb + kSlack) fail("scaling memory, node " + std::to_string(node));
      }
    }
  }
  return verdict;
}

}  // namespace nfvchain
