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

#include "nfvchain/paths.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>

#include "nfvchain/error.h"

namespace nfvchain {
namespace {

// Bounds the lazy enumeration when looking for paths through a given node on
// large graphs.
constexpr size_t kMaxGeneratedPaths = 200000;

}  // namespace

bool Path::Contains(NodeId node) const {
  return std::find(nodes.begin(), nodes.end(), node) != nodes.end();
}

std::optional<int> Path::PositionOf(NodeId node) const {
  auto it = std::find(nodes.begin(), nodes.end(), node);
  if (it == nodes.end()) return std::nullopt;
  return static_cast<int>(it - nodes.begin());
}

std::strong_ordering Path::operator<=>(const Path& other) const {
  if (auto c = nodes.size() <=> other.nodes.size(); c != 0) return c;
  return nodes <=> other.nodes;
}

PathGenerator::PathGenerator(const Topology& topology, NodeId source,
                             NodeId dest)
    : topology_(&topology), source_(source), dest_(dest) {}

std::optional<std::vector<NodeId>> PathGenerator::SpurPath(
    NodeId spur, const std::set<NodeId>& blocked_nodes,
    const std::set<Arc>& blocked_arcs) const {
  // Hop distances to dest over the allowed arcs, then a greedy walk taking the
  // smallest admissible neighbor: the lexicographically least shortest path.
  std::map<NodeId, int> dist;
  std::deque<NodeId> queue;
  dist[dest_] = 0;
  queue.push_back(dest_);
  while (!queue.empty()) {
    NodeId x = queue.front();
    queue.pop_front();
    for (NodeId y : topology_->Neighbors(x)) {
      if (dist.contains(y) || blocked_nodes.contains(y)) continue;
      if (blocked_arcs.contains({y, x})) continue;
      dist[y] = dist[x] + 1;
      queue.push_back(y);
    }
  }
  if (!dist.contains(spur)) return std::nullopt;

  std::vector<NodeId> out = {spur};
  NodeId at = spur;
  while (at != dest_) {
    const int want = dist[at] - 1;
    NodeId next = -1;
    for (NodeId y : topology_->Neighbors(at)) {
      if (blocked_arcs.contains({at, y}) || blocked_nodes.contains(y)) continue;
      auto it = dist.find(y);
      if (it != dist.end() && it->second == want) {
        next = y;
        break;
      }
    }
    out.push_back(next);
    at = next;
  }
  return out;
}

std::optional<Path> PathGenerator::Next() {
  if (!started_) {
    started_ = true;
    if (source_ == dest_ || !topology_->HasNode(source_) ||
        !topology_->HasNode(dest_)) {
      return std::nullopt;
    }
    auto first = SpurPath(source_, {}, {});
    if (!first) return std::nullopt;
    seen_.insert(*first);
    accepted_.push_back(Path{*first});
    return accepted_.back();
  }
  if (accepted_.empty()) return std::nullopt;

  const std::vector<NodeId> last = accepted_.back().nodes;
  for (size_t i = 0; i + 1 < last.size(); ++i) {
    const NodeId spur = last[i];
    std::set<Arc> blocked_arcs;
    for (const Path& p : accepted_) {
      if (p.nodes.size() > i + 1 &&
          std::equal(last.begin(), last.begin() + i + 1, p.nodes.begin())) {
        blocked_arcs.insert({p.nodes[i], p.nodes[i + 1]});
      }
    }
    std::set<NodeId> blocked_nodes(last.begin(), last.begin() + i);
    auto spur_path = SpurPath(spur, blocked_nodes, blocked_arcs);
    if (!spur_path) continue;
    std::vector<NodeId> full(last.begin(), last.begin() + i);
    full.insert(full.end(), spur_path->begin(), spur_path->end());
    if (seen_.insert(full).second) candidates_.insert(Path{std::move(full)});
  }
  if (candidates_.empty()) return std::nullopt;
  accepted_.push_back(*candidates_.begin());
  candidates_.erase(candidates_.begin());
  return accepted_.back();
}

std::vector<Path> KShortestPaths(const Topology& topology, NodeId source,
                                 NodeId dest, int k) {
  if (k < 1) throw Error(ErrorKind::kArgument, "k must be >= 1");
  if (!topology.HasNode(source) || !topology.HasNode(dest)) {
    throw Error(ErrorKind::kArgument, "unknown path endpoint");
  }
  if (source == dest) throw Error(ErrorKind::kArgument, "source == dest");
  std::vector<Path> out;
  PathGenerator gen(topology, source, dest);
  while (static_cast<int>(out.size()) < k) {
    auto p = gen.Next();
    if (!p) break;
    out.push_back(std::move(*p));
  }
  return out;
}

std::vector<NodePair> ChainPairs(const Path& path, const NodeRoles& roles) {
  std::vector<NodePair> pairs;
  const auto& nodes = path.nodes;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const NodeId u = nodes[i];
    if (roles.dc_nodes.contains(u)) {
      pairs.push_back({u, u});
      continue;
    }
    if (!roles.nfv_nodes.contains(u)) continue;
    for (size_t j = i; j < nodes.size(); ++j) {
      const NodeId v = nodes[j];
      if (roles.nfv_nodes.contains(v) || roles.dc_nodes.contains(v)) {
        pairs.push_back({u, v});
      }
    }
  }
  return pairs;
}

namespace {

// Middle-box nodes in the order a flow must meet them.
std::vector<NodeId> MiddleboxOrder(const NodeRoles& roles,
                                   std::span<const std::string> chain) {
  std::vector<std::pair<size_t, NodeId>> keyed;
  for (const auto& [node, fns] : roles.mb_locations) {
    size_t first = std::numeric_limits<size_t>::max();
    for (const std::string& f : fns) {
      auto it = std::find(chain.begin(), chain.end(), f);
      if (it != chain.end()) {
        first = std::min(first, static_cast<size_t>(it - chain.begin()));
      }
    }
    keyed.push_back({first, node});
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<NodeId> order;
  for (const auto& [idx, node] : keyed) order.push_back(node);
  return order;
}

bool VisitsInOrder(const Path& path, std::span<const NodeId> waypoints) {
  int last = -1;
  for (NodeId w : waypoints) {
    auto pos = path.PositionOf(w);
    if (!pos || *pos < last) return false;
    last = *pos;
  }
  return true;
}

}  // namespace

PathSet BuildPathSet(const Topology& topology, const NodeRoles& roles,
                     std::span<const Demand> demands, int k,
                     std::span<const std::string> chain) {
  if (k < 1) throw Error(ErrorKind::kArgument, "k must be >= 1");
  const std::vector<NodeId> mb_order = MiddleboxOrder(roles, chain);

  // Each selector wants k paths satisfying its predicate.
  std::vector<std::function<bool(const Path&)>> selectors;
  selectors.push_back([](const Path&) { return true; });
  for (NodeId dc : roles.dc_nodes) {
    selectors.push_back([dc](const Path& p) { return p.Contains(dc); });
  }
  if (!mb_order.empty()) {
    selectors.push_back(
        [&mb_order](const Path& p) { return VisitsInOrder(p, mb_order); });
  }

  PathSet set;
  set.paths.resize(demands.size());
  set.chain_pairs.resize(demands.size());
  for (size_t d = 0; d < demands.size(); ++d) {
    const Demand& demand = demands[d];
    std::vector<int> found(selectors.size(), 0);
    std::set<Path> chosen;
    PathGenerator gen(topology, demand.source, demand.dest);
    while (gen.produced() < kMaxGeneratedPaths) {
      bool all_done = true;
      for (int f : found) all_done = all_done && f >= k;
      if (all_done) break;
      auto p = gen.Next();
      if (!p) break;
      for (size_t s = 0; s < selectors.size(); ++s) {
        if (found[s] < k && selectors[s](*p)) {
          ++found[s];
          chosen.insert(*p);
        }
      }
    }
    if (chosen.empty()) {
      throw Error(ErrorKind::kModel, "demand (" + std::to_string(demand.source) +
                                         "," + std::to_string(demand.dest) +
                                         ") has no candidate path");
    }
    set.paths[d].assign(chosen.begin(), chosen.end());
    for (size_t p = 0; p < set.paths[d].size(); ++p) {
      const Path& path = set.paths[d][p];
      for (size_t i = 0; i + 1 < path.nodes.size(); ++i) {
        set.link_index[{path.nodes[i], path.nodes[i + 1]}].push_back(
            {static_cast<int>(d), static_cast<int>(p)});
      }
      set.chain_pairs[d].push_back(ChainPairs(path, roles));
    }
  }
  return set;
}

}  // namespace nfvchain
