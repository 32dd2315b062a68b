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

// Scenario data model: the physical network, which nodes may host network
// functions, the traffic demands, the function catalog and the service chain.
// All quantities use Gbps for bandwidth, cores for compute and GB for memory.

#ifndef NFVCHAIN_TOPOLOGY_H_
#define NFVCHAIN_TOPOLOGY_H_

#include <compare>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nfvchain {

// Node ids are small positive integers, 1-based as in the usual topology
// drawings.
using NodeId = int;

struct Arc {
  NodeId from = 0;
  NodeId to = 0;

  auto operator<=>(const Arc&) const = default;
};

// Undirected link; expands to two directed arcs of equal capacity.
struct Link {
  NodeId a = 0;
  NodeId b = 0;
  double capacity_gbps = 0.0;

  bool operator==(const Link&) const = default;
};

class Topology {
 public:
  Topology() = default;
  // Throws Error(kValidation) on self-loops, duplicate links, unknown
  // endpoints, non-positive capacities or duplicate node ids.
  Topology(std::vector<NodeId> nodes, std::vector<Link> links);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }

  bool HasNode(NodeId node) const;
  // Sorted ascending. Empty for unknown nodes.
  std::span<const NodeId> Neighbors(NodeId node) const;
  int Degree(NodeId node) const;
  std::optional<double> ArcCapacity(NodeId from, NodeId to) const;
  // Both directions of every link, sorted by (from, to).
  std::vector<Arc> Arcs() const;

  bool operator==(const Topology& other) const {
    return nodes_ == other.nodes_ && links_ == other.links_;
  }

 private:
  std::vector<NodeId> nodes_;
  std::vector<Link> links_;
  std::map<NodeId, std::vector<NodeId>> adjacency_;
  std::map<Arc, double> capacity_;
};

struct NodeRoles {
  std::set<NodeId> dc_nodes;
  std::set<NodeId> nfv_nodes;
  // Middle-box locations: node -> functions installed there, in chain order.
  std::map<NodeId, std::vector<std::string>> mb_locations;

  bool operator==(const NodeRoles&) const = default;
};

struct Demand {
  NodeId source = 0;
  NodeId dest = 0;
  double gbps = 0.0;

  bool operator==(const Demand&) const = default;
};

struct VnfSpec {
  std::string name;
  double cores_per_gbps = 0.0;
  double install_mem_gb = 0.0;
  double mem_per_gbps = 0.0;
  // Value not backed by a published measurement.
  bool assumed = false;

  bool operator==(const VnfSpec&) const = default;
};

enum class MemoryMode { kOff, kNonScaling, kScaling };

std::string_view MemoryModeName(MemoryMode mode);
std::optional<MemoryMode> ParseMemoryMode(std::string_view name);

inline constexpr double kUnlimited = std::numeric_limits<double>::infinity();

struct ResourceBudget {
  // Cores per NFV node; kUnlimited drops the core constraint.
  double theta = kUnlimited;
  double upsilon_gb = kUnlimited;
  MemoryMode memory_mode = MemoryMode::kOff;

  bool operator==(const ResourceBudget&) const = default;
};

// Hub-and-spoke enterprise traffic description. When present, traffic
// rescaling regenerates the demands exactly instead of scaling floats.
struct EnterpriseTraffic {
  std::vector<NodeId> endpoints;
  NodeId hq = 0;
  double hq_ratio = 1.5;
  double avg_gbps = 1.0;

  bool operator==(const EnterpriseTraffic&) const = default;
};

struct Scenario {
  std::string name;
  Topology topology;
  NodeRoles roles;
  std::vector<Demand> demands;
  std::vector<VnfSpec> catalog;
  std::vector<std::string> chain;
  ResourceBudget budget;
  std::optional<EnterpriseTraffic> enterprise;

  const VnfSpec& Vnf(std::string_view name) const;

  bool operator==(const Scenario&) const = default;
};

// Parses and validates a scenario document. A template (empty demand list)
// is accepted only when allow_template is set.
Scenario ParseScenario(std::string_view json_text, bool allow_template = false);
Scenario LoadScenario(const std::filesystem::path& path,
                      bool allow_template = false);
std::string SerializeScenario(const Scenario& scenario);

// Checks every cross-reference and invariant; throws Error(kValidation).
void ValidateScenario(const Scenario& scenario, bool allow_template = false);

// One demand per ordered endpoint pair. Demands touching the HQ carry
// hq_ratio times the branch value, chosen so the mean flow is avg_gbps.
std::vector<Demand> BuildEnterpriseTraffic(std::span<const NodeId> endpoints,
                                           NodeId hq, double avg_gbps,
                                           double hq_ratio = 1.5);

// Flow intake capacity of a node: sum of the capacities of its incident
// links (degree x capacity when capacities are uniform).
double IntakeCapacity(const Topology& topology, NodeId node);

// Total offered flow.
double TotalFlow(std::span<const Demand> demands);

// Copy of the scenario with the average demand set to avg_gbps.
Scenario WithAverageTraffic(const Scenario& scenario, double avg_gbps);

struct ConsistencyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Structural checks on the bundled 14-node NSFNet adjacency, which pins the
// hand-made digitization: degree(4) = degree(12) = 2, nodes 3, 8, 10 are the
// unique maximum-degree nodes with degree >= 4, and the intake capacities put
// the pure transit nodes into the observed congestion bands.
std::vector<ConsistencyCheck> CheckNsfnetConsistency(const Topology& topology);

}  // namespace nfvchain

#endif  // NFVCHAIN_TOPOLOGY_H_
