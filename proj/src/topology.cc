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

#include "nfvchain/topology.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>
#include "nfvchain/error.h"

namespace nfvchain {
namespace {

using nlohmann::json;

std::string DemandLabel(const Demand& d) {
  return "(" + std::to_string(d.source) + "," + std::to_string(d.dest) + ")";
}

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorKind::kValidation, what);
}

const json& Field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw Error(ErrorKind::kSchema, std::string("missing field '") + key + "'");
  }
  return *it;
}

template <typename T>
T As(const json& value, const std::string& where) {
  try {
    if constexpr (std::is_same_v<T, int>) {
      if (!value.is_number_integer()) throw std::exception();
    } else if constexpr (std::is_same_v<T, double>) {
      if (!value.is_number()) throw std::exception();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!value.is_string()) throw std::exception();
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!value.is_boolean()) throw std::exception();
    }
    return value.get<T>();
  } catch (const std::exception&) {
    throw Error(ErrorKind::kSchema, "field '" + where + "' has the wrong type");
  }
}

const json& ArrayField(const json& doc, const char* key) {
  const json& value = Field(doc, key);
  if (!value.is_array()) {
    throw Error(ErrorKind::kSchema,
                std::string("field '") + key + "' must be a list");
  }
  return value;
}

std::vector<NodeId> NodeList(const json& doc, const char* key) {
  std::vector<NodeId> out;
  for (const json& v : ArrayField(doc, key)) out.push_back(As<int>(v, key));
  return out;
}

// theta / upsilon_gb: a number, or null for "unlimited".
double Budget(const json& doc, const char* key) {
  const json& value = Field(doc, key);
  if (value.is_null()) return kUnlimited;
  return As<double>(value, key);
}

json BudgetJson(double v) { return std::isinf(v) ? json(nullptr) : json(v); }

}  // namespace

Topology::Topology(std::vector<NodeId> nodes, std::vector<Link> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
  std::set<NodeId> seen;
  for (NodeId n : nodes_) {
    if (!seen.insert(n).second) {
      Invalid("duplicate node " + std::to_string(n));
    }
    adjacency_[n];
  }
  for (const Link& link : links_) {
    const std::string name =
        "link (" + std::to_string(link.a) + "," + std::to_string(link.b) + ")";
    if (link.a == link.b) Invalid(name + " is a self-loop");
    if (!seen.contains(link.a) || !seen.contains(link.b)) {
      Invalid(name + " references an undeclared node");
    }
    if (!(link.capacity_gbps > 0.0)) Invalid(name + " has capacity <= 0");
    if (capacity_.contains({link.a, link.b})) Invalid(name + " is duplicated");
    capacity_[{link.a, link.b}] = link.capacity_gbps;
    capacity_[{link.b, link.a}] = link.capacity_gbps;
    adjacency_[link.a].push_back(link.b);
    adjacency_[link.b].push_back(link.a);
  }
  for (auto& [node, adj] : adjacency_) std::sort(adj.begin(), adj.end());
}

bool Topology::HasNode(NodeId node) const { return adjacency_.contains(node); }

std::span<const NodeId> Topology::Neighbors(NodeId node) const {
  auto it = adjacency_.find(node);
  if (it == adjacency_.end()) return {};
  return it->second;
}

int Topology::Degree(NodeId node) const {
  return static_cast<int>(Neighbors(node).size());
}

std::optional<double> Topology::ArcCapacity(NodeId from, NodeId to) const {
  auto it = capacity_.find({from, to});
  if (it == capacity_.end()) return std::nullopt;
  return it->second;
}

std::vector<Arc> Topology::Arcs() const {
  std::vector<Arc> arcs;
  arcs.reserve(capacity_.size());
  for (const auto& [arc, cap] : capacity_) arcs.push_back(arc);
  return arcs;
}

std::string_view MemoryModeName(MemoryMode mode) {
  switch (mode) {
    case MemoryMode::kOff:
      return "off";
    case MemoryMode::kNonScaling:
      return "non_scaling";
    case MemoryMode::kScaling:
      return "scaling";
  }
  return "off";
}

std::optional<MemoryMode> ParseMemoryMode(std::string_view name) {
  if (name == "off") return MemoryMode::kOff;
  if (name == "non_scaling") return MemoryMode::kNonScaling;
  if (name == "scaling") return MemoryMode::kScaling;
  return std::nullopt;
}

const VnfSpec& Scenario::Vnf(std::string_view name) const {
  for (const VnfSpec& v : catalog) {
    if (v.name == name) return v;
  }
  throw Error(ErrorKind::kValidation,
              "function '" + std::string(name) + "' is not in the catalog");
}

void ValidateScenario(const Scenario& s, bool allow_template) {
  const Topology& topo = s.topology;
  for (NodeId n : s.roles.dc_nodes) {
    if (!topo.HasNode(n)) Invalid("dc node " + std::to_string(n) + " unknown");
    if (s.roles.nfv_nodes.contains(n)) {
      Invalid("node " + std::to_string(n) + " is both dc and nfv");
    }
  }
  for (NodeId n : s.roles.nfv_nodes) {
    if (!topo.HasNode(n)) Invalid("nfv node " + std::to_string(n) + " unknown");
  }

  std::set<std::string> names;
  for (const VnfSpec& v : s.catalog) {
    if (v.name.empty()) Invalid("vnf with empty name");
    if (!names.insert(v.name).second) Invalid("vnf '" + v.name + "' repeated");
    if (v.cores_per_gbps < 0 || v.install_mem_gb < 0 || v.mem_per_gbps < 0) {
      Invalid("vnf '" + v.name + "' has a negative requirement");
    }
  }

  if (s.chain.empty()) Invalid("service chain is empty");
  std::set<std::string> in_chain;
  for (const std::string& f : s.chain) {
    if (!names.contains(f)) Invalid("chain function '" + f + "' not in catalog");
    if (!in_chain.insert(f).second) Invalid("chain repeats '" + f + "'");
  }

  for (const auto& [node, fns] : s.roles.mb_locations) {
    if (!topo.HasNode(node)) {
      Invalid("mb location " + std::to_string(node) + " unknown");
    }
    if (fns.size() > 3) {
      Invalid("mb location " + std::to_string(node) + " holds more than 3 MBs");
    }
    for (const std::string& f : fns) {
      if (!names.contains(f)) Invalid("mb function '" + f + "' not in catalog");
    }
  }

  if (s.demands.empty() && !allow_template) Invalid("scenario has no demands");
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (const Demand& d : s.demands) {
    const std::string label = "demand " + DemandLabel(d);
    if (!topo.HasNode(d.source) || !topo.HasNode(d.dest)) {
      Invalid(label + " references an unknown node");
    }
    if (d.source == d.dest) Invalid(label + " has source == dest");
    if (!(d.gbps > 0.0)) Invalid(label + " has flow <= 0");
    if (!pairs.insert({d.source, d.dest}).second) Invalid(label + " repeated");
  }

  if (s.budget.theta < 0) Invalid("theta < 0");
  if (s.budget.upsilon_gb < 0) Invalid("upsilon_gb < 0");

  if (s.enterprise) {
    const EnterpriseTraffic& e = *s.enterprise;
    if (std::find(e.endpoints.begin(), e.endpoints.end(), e.hq) ==
        e.endpoints.end()) {
      Invalid("enterprise hq is not an endpoint");
    }
  }
}

Scenario ParseScenario(std::string_view json_text, bool allow_template) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorKind::kSchema, "top-level value must be an object");
  }

  Scenario s;
  if (auto it = doc.find("name"); it != doc.end()) {
    s.name = As<std::string>(*it, "name");
  }

  std::vector<NodeId> nodes = NodeList(doc, "nodes");
  std::vector<Link> links;
  for (const json& l : ArrayField(doc, "links")) {
    if (!l.is_array() || l.size() != 3) {
      throw Error(ErrorKind::kSchema, "field 'links' entries must be [i, j, c]");
    }
    links.push_back({As<int>(l[0], "links"), As<int>(l[1], "links"),
                     As<double>(l[2], "links")});
  }
  s.topology = Topology(std::move(nodes), std::move(links));

  for (NodeId n : NodeList(doc, "dc_nodes")) s.roles.dc_nodes.insert(n);
  for (NodeId n : NodeList(doc, "nfv_nodes")) s.roles.nfv_nodes.insert(n);
  const json& mb = Field(doc, "mb_locations");
  if (!mb.is_object()) {
    throw Error(ErrorKind::kSchema, "field 'mb_locations' must be an object");
  }
  for (const auto& [key, fns] : mb.items()) {
    NodeId node = 0;
    try {
      size_t used = 0;
      node = std::stoi(key, &used);
      if (used != key.size()) throw std::exception();
    } catch (const std::exception&) {
      throw Error(ErrorKind::kSchema, "mb_locations key '" + key + "' is not a node id");
    }
    if (!fns.is_array()) {
      throw Error(ErrorKind::kSchema, "mb_locations values must be lists");
    }
    auto& list = s.roles.mb_locations[node];
    for (const json& f : fns) list.push_back(As<std::string>(f, "mb_locations"));
  }

  for (const json& d : ArrayField(doc, "demands")) {
    s.demands.push_back({As<int>(Field(d, "s"), "s"), As<int>(Field(d, "d"), "d"),
                         As<double>(Field(d, "gbps"), "gbps")});
  }
  for (const json& v : ArrayField(doc, "vnfs")) {
    VnfSpec spec;
    spec.name = As<std::string>(Field(v, "name"), "name");
    spec.cores_per_gbps = As<double>(Field(v, "cores_per_gbps"), "cores_per_gbps");
    spec.install_mem_gb = As<double>(Field(v, "install_mem_gb"), "install_mem_gb");
    spec.mem_per_gbps = As<double>(Field(v, "mem_per_gbps"), "mem_per_gbps");
    spec.assumed = As<bool>(Field(v, "assumed"), "assumed");
    s.catalog.push_back(std::move(spec));
  }
  for (const json& f : ArrayField(doc, "chain")) {
    s.chain.push_back(As<std::string>(f, "chain"));
  }
  s.budget.theta = Budget(doc, "theta");
  s.budget.upsilon_gb = Budget(doc, "upsilon_gb");
  const std::string mode = As<std::string>(Field(doc, "memory_mode"), "memory_mode");
  auto parsed = ParseMemoryMode(mode);
  if (!parsed) {
    throw Error(ErrorKind::kSchema, "field 'memory_mode' must be off, non_scaling or scaling");
  }
  s.budget.memory_mode = *parsed;

  if (auto it = doc.find("enterprise"); it != doc.end() && !it->is_null()) {
    EnterpriseTraffic e;
    e.endpoints = NodeList(*it, "endpoints");
    e.hq = As<int>(Field(*it, "hq"), "hq");
    e.hq_ratio = As<double>(Field(*it, "hq_ratio"), "hq_ratio");
    e.avg_gbps = As<double>(Field(*it, "avg_gbps"), "avg_gbps");
    s.enterprise = std::move(e);
  }

  ValidateScenario(s, allow_template);
  return s;
}

Scenario LoadScenario(const std::filesystem::path& path, bool allow_template) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseScenario(buf.str(), allow_template);
}

std::string SerializeScenario(const Scenario& s) {
  json doc = json::object();
  if (!s.name.empty()) doc["name"] = s.name;
  doc["nodes"] = s.topology.nodes();
  json links = json::array();
  for (const Link& l : s.topology.links()) {
    links.push_back({l.a, l.b, l.capacity_gbps});
  }
  doc["links"] = links;
  doc["dc_nodes"] = std::vector<NodeId>(s.roles.dc_nodes.begin(), s.roles.dc_nodes.end());
  doc["nfv_nodes"] =
      std::vector<NodeId>(s.roles.nfv_nodes.begin(), s.roles.nfv_nodes.end());
  json mb = json::object();
  for (const auto& [node, fns] : s.roles.mb_locations) mb[std::to_string(node)] = fns;
  doc["mb_locations"] = mb;
  json demands = json::array();
  for (const Demand& d : s.demands) {
    demands.push_back({{"s", d.source}, {"d", d.dest}, {"gbps", d.gbps}});
  }
  doc["demands"] = demands;
  json vnfs = json::array();
  for (const VnfSpec& v : s.catalog) {
    vnfs.push_back({{"name", v.name},
                    {"cores_per_gbps", v.cores_per_gbps},
                    {"install_mem_gb", v.install_mem_gb},
                    {"mem_per_gbps", v.mem_per_gbps},
                    {"assumed", v.assumed}});
  }
  doc["vnfs"] = vnfs;
  doc["chain"] = s.chain;
  doc["theta"] = BudgetJson(s.budget.theta);
  doc["upsilon_gb"] = BudgetJson(s.budget.upsilon_gb);
  doc["memory_mode"] = std::string(MemoryModeName(s.budget.memory_mode));
  if (s.enterprise) {
    doc["enterprise"] = {{"endpoints", s.enterprise->endpoints},
                         {"hq", s.enterprise->hq},
                         {"hq_ratio", s.enterprise->hq_ratio},
                         {"avg_gbps", s.enterprise->avg_gbps}};
  }
  return doc.dump(2) + "\n";
}

std::vector<Demand> BuildEnterpriseTraffic(std::span<const NodeId> endpoints,
                                           NodeId hq, double avg_gbps,
                                           double hq_ratio) {
  if (std::find(endpoints.begin(), endpoints.end(), hq) == endpoints.end()) {
    throw Error(ErrorKind::kArgument, "hq " + std::to_string(hq) + " is not an endpoint");
  }
  if (endpoints.size() < 2) {
    throw Error(ErrorKind::kArgument, "need at least two endpoints");
  }
  if (!(avg_gbps > 0) || !(hq_ratio > 0)) {
    throw Error(ErrorKind::kArgument, "avg_gbps and hq_ratio must be > 0");
  }
  const double n = static_cast<double>(endpoints.size());
  const double total = n * (n - 1);
  const double hq_count = 2 * (n - 1);
  const double branch_count = total - hq_count;
  // Mean constraint: (hq_count * ratio * x + branch_count * x) / total = avg.
  const double denom = hq_count * hq_ratio + branch_count;
  const double branch = avg_gbps * total / denom;
  const double hq_flow = avg_gbps * total * hq_ratio / denom;

  std::vector<Demand> demands;
  for (NodeId s : endpoints) {
    for (NodeId d : endpoints) {
      if (s == d) continue;
      demands.push_back({s, d, (s == hq || d == hq) ? hq_flow : branch});
    }
  }
  return demands;
}

double IntakeCapacity(const Topology& topology, NodeId node) {
  if (!topology.HasNode(node)) {
    throw Error(ErrorKind::kArgument, "unknown node " + std::to_string(node));
  }
  double total = 0.0;
  for (NodeId nb : topology.Neighbors(node)) {
    total += *topology.ArcCapacity(nb, node);
  }
  return total;
}

double TotalFlow(std::span<const Demand> demands) {
  return std::accumulate(demands.begin(), demands.end(), 0.0,
                         [](double acc, const Demand& d) { return acc + d.gbps; });
}

Scenario WithAverageTraffic(const Scenario& scenario, double avg_gbps) {
  if (!(avg_gbps > 0)) throw Error(ErrorKind::kArgument, "traffic must be > 0");
  Scenario out = scenario;
  if (scenario.enterprise) {
    out.enterprise->avg_gbps = avg_gbps;
    out.demands = BuildEnterpriseTraffic(scenario.enterprise->endpoints,
                                         scenario.enterprise->hq, avg_gbps,
                                         scenario.enterprise->hq_ratio);
    return out;
  }
  if (scenario.demands.empty()) {
    throw Error(ErrorKind::kArgument, "cannot rescale a scenario without demands");
  }
  const double mean = TotalFlow(scenario.demands) / scenario.demands.size();
  for (Demand& d : out.demands) d.gbps = d.gbps / mean * avg_gbps;
  return out;
}

std::vector<ConsistencyCheck> CheckNsfnetConsistency(const Topology& topo) {
  std::vector<ConsistencyCheck> checks;
  auto add = [&](std::string name, bool ok, std::string detail) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  };
  auto degree_of = [&](NodeId n) {
    return topo.HasNode(n) ? topo.Degree(n) : -1;
  };

  add("14 nodes", topo.nodes().size() == 14,
      std::to_string(topo.nodes().size()) + " nodes");
  add("degree(4) = degree(12) = 2", degree_of(4) == 2 && degree_of(12) == 2,
      "degree(4)=" + std::to_string(degree_of(4)) +
          " degree(12)=" + std::to_string(degree_of(12)));

  const int hub = degree_of(3);
  bool hubs_ok = hub >= 4 && degree_of(8) == hub && degree_of(10) == hub;
  for (NodeId n : topo.nodes()) {
    if (n != 3 && n != 8 && n != 10 && topo.Degree(n) >= hub) hubs_ok = false;
  }
  add("nodes 3, 8, 10 have the unique highest degree (>= 4)", hubs_ok,
      "degree(3)=" + std::to_string(hub) + " degree(8)=" +
          std::to_string(degree_of(8)) + " degree(10)=" +
          std::to_string(degree_of(10)));

  // Transit-only nodes fail as DC exactly when the total flow exceeds their
  // intake. With 12 flows and avg traffic t, rho = 12 t.
  struct Band {
    std::vector<NodeId> nodes;
    double feasible_rho;    // largest rho at which the node is still usable
    double infeasible_rho;  // first rho at which it fails
  };
  const std::vector<Band> bands = {
      {{4, 12}, 0.0, 90.0},
      {{6, 7, 9, 13}, 120.0, 150.0},
      {{3, 8, 10}, 150.0, 180.0},
  };
  for (const Band& band : bands) {
    bool ok = true;
    std::ostringstream detail;
    for (NodeId n : band.nodes) {
      if (!topo.HasNode(n)) {
        ok = false;
        continue;
      }
      const double omega = IntakeCapacity(topo, n);
      detail << "Omega(" << n << ")=" << omega << " ";
      if (!(omega >= band.feasible_rho && omega < band.infeasible_rho)) ok = false;
    }
    std::ostringstream name;
    name << "transit nodes fail first at rho=" << band.infeasible_rho;
    add(name.str(), ok, detail.str());
  }
  return checks;
}

}  // namespace nfvchain
