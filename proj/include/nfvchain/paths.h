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

// Candidate routing paths and the path-indexed sets the placement model is
// built from.

#ifndef NFVCHAIN_PATHS_H_
#define NFVCHAIN_PATHS_H_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "nfvchain/topology.h"

namespace nfvchain {

// A simple path; nodes.front() is the source, nodes.back() the destination.
struct Path {
  std::vector<NodeId> nodes;

  int length() const { return static_cast<int>(nodes.size()) - 1; }
  bool Contains(NodeId node) const;
  std::optional<int> PositionOf(NodeId node) const;

  bool operator==(const Path&) const = default;
  // Hop count first, then the node sequence lexicographically.
  std::strong_ordering operator<=>(const Path& other) const;
};

// Loopless paths from source to dest in nondecreasing hop count, ties broken
// by the lexicographic node sequence (Yen's algorithm, evaluated lazily).
class PathGenerator {
 public:
  PathGenerator(const Topology& topology, NodeId source, NodeId dest);

  // Next path in order, or nullopt once every simple path has been produced.
  std::optional<Path> Next();

  size_t produced() const { return accepted_.size(); }

 private:
  std::optional<std::vector<NodeId>> SpurPath(
      NodeId spur, const std::set<NodeId>& blocked_nodes,
      const std::set<Arc>& blocked_arcs) const;

  const Topology* topology_;
  NodeId source_;
  NodeId dest_;
  std::vector<Path> accepted_;
  std::set<Path> candidates_;
  std::set<std::vector<NodeId>> seen_;
  bool started_ = false;
};

// Up to k shortest loopless paths. Empty when the pair is disconnected.
std::vector<Path> KShortestPaths(const Topology& topology, NodeId source,
                                 NodeId dest, int k);

struct PathRef {
  int demand = 0;
  int path = 0;

  auto operator<=>(const PathRef&) const = default;
};

struct NodePair {
  NodeId first = 0;
  NodeId second = 0;

  auto operator<=>(const NodePair&) const = default;
};

struct PathSet {
  // Candidate paths per demand, sorted by (length, node sequence).
  std::vector<std::vector<Path>> paths;
  // Directed arc -> (demand, path) pairs whose path uses the arc.
  std::map<Arc, std::vector<PathRef>> link_index;
  // [demand][path] -> node pairs (u, v) that may host consecutive chain
  // functions: u an NFV node, v a hosting node at or after u, plus (u, u)
  // for every DC node u on the path.
  std::vector<std::vector<std::vector<NodePair>>> chain_pairs;
};

// Node pairs for one path under the given roles, ordered by path position.
std::vector<NodePair> ChainPairs(const Path& path, const NodeRoles& roles);

// Candidate list per demand: the k shortest paths, plus the k shortest paths
// through each DC node, plus (when middle-boxes are placed) the k shortest
// paths visiting the middle-box nodes in chain order. Throws Error(kModel)
// naming the demand when a demand has no candidate path.
PathSet BuildPathSet(const Topology& topology, const NodeRoles& roles,
                     std::span<const Demand> demands, int k,
                     std::span<const std::string> chain = {});

}  // namespace nfvchain

#endif  // NFVCHAIN_PATHS_H_
