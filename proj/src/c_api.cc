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

#include "nfvchain/nfvchain.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "nfvchain/analysis.h"
#include "nfvchain/error.h"
#include "nfvchain/harness.h"
#include "nfvchain/ilp_model.h"
#include "nfvchain/paths.h"
#include "nfvchain/topology.h"
#include "nfvchain/verify.h"

struct nfvc_scenario {
  nfvchain::Scenario scenario;
  std::optional<nfvchain::Strategy> strategy;
  std::optional<int> k;
};

struct nfvc_result {
  nfvchain::Scenario scenario;
  nfvchain::Strategy strategy;
  nfvchain::SolveResult result;
  double bound = 0.0;
};

namespace {

using nfvchain::Error;
using nfvchain::ErrorKind;
using nlohmann::json;

thread_local std::string g_last_error;

nfvc_status StatusOf(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return NFVC_ERR_PARSE;
    case ErrorKind::kSchema: return NFVC_ERR_SCHEMA;
    case ErrorKind::kValidation: return NFVC_ERR_VALIDATION;
    case ErrorKind::kModel: return NFVC_ERR_MODEL;
    case ErrorKind::kGuard: return NFVC_ERR_GUARD;
    case ErrorKind::kIo: return NFVC_ERR_IO;
    case ErrorKind::kArgument: return NFVC_ERR_ARGUMENT;
  }
  return NFVC_ERR_INTERNAL;
}

template <typename Body>
nfvc_status Guarded(Body&& body) {
  try {
    body();
    g_last_error.clear();
    return NFVC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return StatusOf(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NFVC_ERR_INTERNAL;
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::kArgument, what);
}

char* CopyString(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

nfvc_options Defaults(const nfvc_options* options) {
  nfvc_options o;
  nfvc_options_init(&o);
  return options != nullptr ? *options : o;
}

std::vector<nfvchain::NodeId> NodeList(const int* nodes, size_t count) {
  Require(nodes != nullptr || count == 0, "node list is NULL");
  return std::vector<nfvchain::NodeId>(nodes, nodes + count);
}

std::vector<double> Values(const double* values, size_t count, const char* what) {
  Require(values != nullptr && count > 0, what);
  return std::vector<double>(values, values + count);
}

// Scenario copy with every override of the options applied.
nfvchain::Scenario Configure(const nfvc_scenario* handle, const nfvc_options& o) {
  Require(handle != nullptr, "scenario is NULL");
  nfvchain::Scenario s = handle->scenario;
  if (o.traffic_gbps > 0) s = nfvchain::WithAverageTraffic(s, o.traffic_gbps);
  if (o.dc != 0) {
    Require(s.topology.HasNode(o.dc), "dc node is not in the topology");
    s.roles.dc_nodes = {o.dc};
  }
  if (o.theta >= 0) s.budget.theta = o.theta;
  if (o.upsilon_gb >= 0) s.budget.upsilon_gb = o.upsilon_gb;
  switch (o.memory_mode) {
    case NFVC_MEMORY_KEEP: break;
    case NFVC_MEMORY_OFF: s.budget.memory_mode = nfvchain::MemoryMode::kOff; break;
    case NFVC_MEMORY_NON_SCALING:
      s.budget.memory_mode = nfvchain::MemoryMode::kNonScaling;
      break;
    case NFVC_MEMORY_SCALING: s.budget.memory_mode = nfvchain::MemoryMode::kScaling; break;
    default: throw Error(ErrorKind::kArgument, "unknown memory mode");
  }
  return s;
}

nfvchain::Strategy MakeStrategy(const nfvc_scenario* handle, const nfvchain::Scenario& s,
                                const nfvc_options& o) {
  if (o.strategy == nullptr) {
    if (handle->strategy) return *handle->strategy;
    return nfvchain::DcOnly{};
  }
  const std::string id = o.strategy;
  if (id == "mb") {
    Require(!s.roles.mb_locations.empty(), "scenario has no middle-box locations");
    return nfvchain::Middlebox{s.roles.mb_locations};
  }
  if (id == "dc-only") return nfvchain::DcOnly{};
  if (id == "dc-nfv") {
    nfvchain::DcNfv dn{s.roles.nfv_nodes};
    if (o.nfv_nodes != nullptr) {
      const auto nodes = NodeList(o.nfv_nodes, o.nfv_node_count);
      dn.nfv_nodes = std::set<nfvchain::NodeId>(nodes.begin(), nodes.end());
    }
    return dn;
  }
  if (id == "dc-nfv-all") return nfvchain::DcNfvAll{};
  if (id == "nfv-all") return nfvchain::NfvAll{};
  throw Error(ErrorKind::kArgument, "unknown strategy '" + id + "'");
}

nfvchain::InstanceOptions Instance(const nfvc_scenario* handle, const nfvc_options& o) {
  nfvchain::InstanceOptions io;
  io.k = o.k > 0 ? o.k : handle->k.value_or(io.k);
  Require(o.timeout_s >= 0, "timeout must be >= 0");
  io.solver.time_limit_s = o.timeout_s;
  io.solver.node_limit = o.node_limit;
  return io;
}

nfvchain::SweepOptions Sweep(const nfvc_scenario* handle, const nfvc_options& o) {
  const nfvchain::InstanceOptions io = Instance(handle, o);
  nfvchain::SweepOptions so;
  so.k = o.k > 0 ? o.k : so.k;
  so.solver = io.solver;
  so.workers = o.workers;
  so.deterministic = o.deterministic != 0;
  return so;
}

json Number(double value) {
  if (std::isfinite(value)) return value;
  return nfvchain::FormatNumber(value);
}

json SolutionJson(const nfvc_result& r) {
  json out;
  out["status"] = nfvchain::StatusName(r.result.status);
  out["strategy"] = nfvchain::StrategyId(r.strategy);
  out["shortest_path_bound"] = r.bound;
  out["nodes"] = r.result.stats.nodes;
  out["wall_ms"] = r.result.stats.wall_ms;
  if (!r.result.has_incumbent()) {
    out["objective"] = nullptr;
    return out;
  }
  const nfvchain::PlacementSolution& sol = *r.result.solution;
  out["objective"] = sol.objective;
  const nfvchain::LoadProfile loads = nfvchain::LinkLoads(sol, r.scenario.topology);
  out["max_link_load_gbps"] = loads.max_load;
  const nfvchain::Verdict verdict = nfvchain::VerifySolution(r.scenario, r.strategy, sol);
  out["verified"] = verdict.ok;
  out["violations"] = verdict.violations;
  json demands = json::array();
  for (size_t d = 0; d < sol.demands.size(); ++d) {
    json item;
    item["source"] = sol.demands[d].source;
    item["dest"] = sol.demands[d].dest;
    item["gbps"] = sol.demands[d].gbps;
    item["path"] = sol.paths[d].nodes;
    json hosts = json::array();
    for (const auto& p : sol.placements[d]) {
      hosts.push_back({{"function", p.function}, {"node", p.node}});
    }
    item["placements"] = hosts;
    demands.push_back(item);
  }
  out["demands"] = demands;
  json arcs = json::array();
  for (const auto& [arc, load] : loads.loads) {
    if (load > 0) arcs.push_back({{"from", arc.from}, {"to", arc.to}, {"gbps", load}});
  }
  out["link_loads"] = arcs;
  return out;
}

std::vector<nfvchain::StrategyFamily> Families(const char* list, const int* xs,
                                               size_t x_count) {
  Require(list != nullptr, "strategy list is NULL");
  Require(xs != nullptr || x_count == 0, "x list is NULL");
  std::vector<nfvchain::StrategyFamily> out;
  std::stringstream in(list);
  std::string id;
  while (std::getline(in, id, ',')) {
    if (id.empty()) continue;
    if (id == "dc-nfv") {
      Require(x_count > 0, "dc-nfv needs at least one x");
      for (size_t i = 0; i < x_count; ++i) out.push_back(*nfvchain::ParseFamily(id, xs[i]));
      continue;
    }
    const auto family = nfvchain::ParseFamily(id);
    if (!family) throw Error(ErrorKind::kArgument, "unknown strategy '" + id + "'");
    out.push_back(*family);
  }
  Require(!out.empty(), "no strategies given");
  return out;
}

size_t CountTimeouts(const std::vector<nfvchain::SweepRecord>& records) {
  size_t n = 0;
  for (const auto& r : records) {
    if (!r.aggregate && r.status == nfvchain::StatusName(nfvchain::SolveStatus::kTimeout)) ++n;
  }
  return n;
}

const char* FeasibilityName(nfvchain::Feasibility f) {
  switch (f) {
    case nfvchain::Feasibility::kFeasible: return "feasible";
    case nfvchain::Feasibility::kInfeasible: return "infeasible";
    case nfvchain::Feasibility::kUnknown: return "unknown";
  }
  return "unknown";
}

}  // namespace

extern "C" {

void nfvc_options_init(nfvc_options* options) {
  if (options == nullptr) return;
  *options = nfvc_options{};
  options->strategy = nullptr;
  options->theta = -1.0;
  options->traffic_gbps = -1.0;
  options->memory_mode = NFVC_MEMORY_KEEP;
  options->upsilon_gb = -1.0;
  options->k = -1;
}

const char* nfvc_version(void) { return "1.0.0"; }

const char* nfvc_last_error(void) { return g_last_error.c_str(); }

void nfvc_string_free(char* text) { std::free(text); }

nfvc_status nfvc_scenario_load(const char* path, int allow_template, nfvc_scenario** out) {
  return Guarded([&] {
    Require(path != nullptr && out != nullptr, "path or out is NULL");
    *out = nullptr;
    auto handle = std::make_unique<nfvc_scenario>();
    handle->scenario = nfvchain::LoadScenario(path, allow_template != 0);
    *out = handle.release();
  });
}

nfvc_status nfvc_scenario_parse(const char* text, int allow_template, nfvc_scenario** out) {
  return Guarded([&] {
    Require(text != nullptr && out != nullptr, "json or out is NULL");
    *out = nullptr;
    auto handle = std::make_unique<nfvc_scenario>();
    handle->scenario = nfvchain::ParseScenario(text, allow_template != 0);
    *out = handle.release();
  });
}

nfvc_status nfvc_scenario_random(uint64_t seed, nfvc_scenario** out) {
  return Guarded([&] {
    Require(out != nullptr, "out is NULL");
    *out = nullptr;
    nfvchain::RandomInstance inst = nfvchain::MakeRandomInstance(seed);
    auto handle = std::make_unique<nfvc_scenario>();
    handle->scenario = std::move(inst.scenario);
    handle->strategy = std::move(inst.strategy);
    handle->k = inst.k;
    *out = handle.release();
  });
}

void nfvc_scenario_free(nfvc_scenario* scenario) { delete scenario; }

nfvc_status nfvc_scenario_json(const nfvc_scenario* scenario, char** out) {
  return Guarded([&] {
    Require(scenario != nullptr && out != nullptr, "scenario or out is NULL");
    *out = CopyString(nfvchain::SerializeScenario(scenario->scenario));
  });
}

nfvc_status nfvc_solve(const nfvc_scenario* scenario, const nfvc_options* options,
                       nfvc_result** out) {
  return Guarded([&] {
    Require(out != nullptr, "out is NULL");
    *out = nullptr;
    const nfvc_options o = Defaults(options);
    auto r = std::make_unique<nfvc_result>();
    r->scenario = Configure(scenario, o);
    r->strategy = MakeStrategy(scenario, r->scenario, o);
    r->bound = nfvchain::ShortestPathBound(r->scenario.topology, r->scenario.demands);
    r->result = nfvchain::SolveInstance(r->scenario, r->strategy, Instance(scenario, o));
    *out = r.release();
  });
}

nfvc_solve_status nfvc_result_status(const nfvc_result* result) {
  if (result == nullptr) return NFVC_SOLVE_INFEASIBLE;
  switch (result->result.status) {
    case nfvchain::SolveStatus::kOptimal: return NFVC_SOLVE_OPTIMAL;
    case nfvchain::SolveStatus::kInfeasible: return NFVC_SOLVE_INFEASIBLE;
    case nfvchain::SolveStatus::kTimeout: return NFVC_SOLVE_TIMEOUT;
  }
  return NFVC_SOLVE_INFEASIBLE;
}

double nfvc_result_objective(const nfvc_result* result) {
  if (result == nullptr) return std::numeric_limits<double>::quiet_NaN();
  return result->result.objective();
}

size_t nfvc_result_demand_count(const nfvc_result* result) {
  return result == nullptr ? 0 : result->scenario.demands.size();
}

size_t nfvc_result_path(const nfvc_result* result, size_t demand, int* nodes,
                        size_t capacity) {
  if (result == nullptr || !result->result.has_incumbent()) return 0;
  const auto& paths = result->result.solution->paths;
  if (demand >= paths.size()) return 0;
  const auto& seq = paths[demand].nodes;
  if (nodes != nullptr) {
    for (size_t i = 0; i < std::min(capacity, seq.size()); ++i) nodes[i] = seq[i];
  }
  return seq.size();
}

nfvc_status nfvc_result_json(const nfvc_result* result, char** out) {
  return Guarded([&] {
    Require(result != nullptr && out != nullptr, "result or out is NULL");
    *out = CopyString(SolutionJson(*result).dump(2));
  });
}

void nfvc_result_free(nfvc_result* result) { delete result; }

nfvc_status nfvc_lp_text(const nfvc_scenario* scenario, const nfvc_options* options,
                         char** out) {
  return Guarded([&] {
    Require(out != nullptr, "out is NULL");
    const nfvc_options o = Defaults(options);
    const nfvchain::Scenario s = Configure(scenario, o);
    const nfvchain::Strategy strategy = MakeStrategy(scenario, s, o);
    const nfvchain::PathSet paths =
        nfvchain::BuildPathSet(s.topology, nfvchain::EffectiveRoles(s, strategy), s.demands,
                               Instance(scenario, o).k, s.chain);
    const nfvchain::IlpModel model = nfvchain::Compile(s, strategy, paths);
    *out = CopyString(nfvchain::LpText(model));
  });
}

nfvc_status nfvc_export_lp(const nfvc_scenario* scenario, const nfvc_options* options,
                           const char* path) {
  char* text = nullptr;
  nfvc_status st = nfvc_lp_text(scenario, options, &text);
  if (st != NFVC_OK) return st;
  st = Guarded([&] {
    Require(path != nullptr, "path is NULL");
    std::ofstream file(path, std::ios::binary);
    file << text;
    if (!file) throw Error(ErrorKind::kIo, std::string("cannot write ") + path);
  });
  nfvc_string_free(text);
  return st;
}

nfvc_status nfvc_sweep_csv(const nfvc_scenario* scenario, const nfvc_options* options,
                           const char* strategies, const int* xs, size_t x_count,
                           const double* thetas, size_t theta_count, const double* traffic,
                           size_t traffic_count, char** out, size_t* timeouts) {
  return Guarded([&] {
    Require(out != nullptr, "out is NULL");
    const nfvc_options o = Defaults(options);
    nfvc_options base = o;
    base.traffic_gbps = -1;
    base.theta = -1;
    const nfvchain::Scenario s = Configure(scenario, base);
    const auto families = Families(strategies, xs, x_count);
    const auto records = nfvchain::RunSweep(
        s, families, Values(thetas, theta_count, "theta list is empty"),
        Values(traffic, traffic_count, "traffic list is empty"), Sweep(scenario, o),
        NodeList(o.nfv_nodes, o.nfv_node_count));
    if (timeouts != nullptr) *timeouts = CountTimeouts(records);
    *out = CopyString(nfvchain::ToCsv(records));
  });
}

nfvc_status nfvc_memory_sweep_csv(const nfvc_scenario* scenario,
                                  const nfvc_options* options, const double* upsilons,
                                  size_t upsilon_count, const double* traffic,
                                  size_t traffic_count, char** out, size_t* timeouts) {
  return Guarded([&] {
    Require(out != nullptr, "out is NULL");
    const nfvc_options o = Defaults(options);
    Require(o.memory_mode == NFVC_MEMORY_NON_SCALING || o.memory_mode == NFVC_MEMORY_SCALING,
            "memory sweep needs memory mode non_scaling or scaling");
    nfvc_options base = o;
    base.traffic_gbps = -1;
    const nfvchain::Scenario s = Configure(scenario, base);
    const auto records = nfvchain::MemorySweep(
        s, Values(upsilons, upsilon_count, "upsilon list is empty"),
        Values(traffic, traffic_count, "traffic list is empty"), s.budget.memory_mode,
        Sweep(scenario, o));
    if (timeouts != nullptr) *timeouts = CountTimeouts(records);
    *out = CopyString(nfvchain::ToCsv(records));
  });
}

nfvc_status nfvc_congestion_json(const nfvc_scenario* scenario, const nfvc_options* options,
                                 const double* traffic, size_t traffic_count,
                                 const int* candidates, size_t candidate_count, char** out,
                                 int* any_unknown) {
  return Guarded([&] {
    Require(out != nullptr, "out is NULL");
    const nfvc_options o = Defaults(options);
    nfvc_options base = o;
    base.traffic_gbps = -1;
    const nfvchain::Scenario s = Configure(scenario, base);
    std::vector<nfvchain::NodeId> pool = NodeList(candidates, candidate_count);
    if (pool.empty()) pool = s.topology.nodes();
    const auto values = Values(traffic, traffic_count, "traffic list is empty");
    const nfvchain::CongestionReport rep =
        nfvchain::CongestionSweep(s, values, pool, Instance(scenario, o), o.workers);
    json doc;
    doc["candidates"] = rep.candidates;
    json rows = json::array();
    bool unknown = false;
    for (size_t t = 0; t < rep.traffic.size(); ++t) {
      json row;
      row["traffic_gbps"] = rep.traffic[t];
      json status = json::object();
      for (const auto& [node, f] : rep.status[t]) {
        status[std::to_string(node)] = FeasibilityName(f);
        if (f == nfvchain::Feasibility::kUnknown) unknown = true;
      }
      row["status"] = status;
      row["infeasible"] = rep.Infeasible(t);
      row["newly_infeasible"] = rep.NewlyInfeasible(t);
      row["infeasible_count"] = rep.infeasible_count[t];
      rows.push_back(row);
    }
    doc["rows"] = rows;
    doc["congestion_point"] =
        rep.congestion_point ? json(*rep.congestion_point) : json(nullptr);
    doc["monotone"] = rep.monotone;
    doc["warnings"] = rep.warnings;
    if (any_unknown != nullptr) *any_unknown = unknown ? 1 : 0;
    *out = CopyString(doc.dump(2));
  });
}

nfvc_status nfvc_inflection_json(const nfvc_scenario* scenario, const nfvc_options* options,
                                 const double* thetas, size_t theta_count, char** out,
                                 int* any_unknown) {
  return Guarded([&] {
    Require(out != nullptr, "out is NULL");
    const nfvc_options o = Defaults(options);
    nfvc_options base = o;
    base.theta = -1;
    const nfvchain::Scenario s = Configure(scenario, base);
    const nfvchain::Strategy strategy = MakeStrategy(scenario, s, o);
    const auto values = Values(thetas, theta_count, "theta list is empty");
    const nfvchain::InflectionResult res =
        nfvchain::InflectionPoint(s, strategy, values, Instance(scenario, o));
    json doc;
    doc["strategy"] = nfvchain::StrategyId(strategy);
    doc["shortest_path_bound"] = res.bound;
    doc["inflection_theta"] = res.theta ? json(*res.theta) : json("none in range");
    json probes = json::array();
    for (const auto& p : res.probes) {
      probes.push_back({{"theta", Number(p.theta)},
                        {"status", nfvchain::StatusName(p.status)},
                        {"at_bound", p.at_bound},
                        {"decided", p.decided},
                        {"objective", std::isnan(p.objective) ? json(nullptr)
                                                              : json(p.objective)}});
    }
    doc["probes"] = probes;
    doc["any_infeasible"] = res.any_infeasible;
    doc["any_unknown"] = res.any_unknown;
    if (any_unknown != nullptr) *any_unknown = res.any_unknown ? 1 : 0;
    *out = CopyString(doc.dump(2));
  });
}

nfvc_status nfvc_validate_json(const nfvc_scenario* scenario, char** out, int* passed) {
  return Guarded([&] {
    Require(scenario != nullptr && out != nullptr, "scenario or out is NULL");
    const nfvchain::Scenario& s = scenario->scenario;
    json doc;
    doc["name"] = s.name;
    doc["nodes"] = s.topology.nodes().size();
    doc["links"] = s.topology.links().size();
    json nodes = json::array();
    for (nfvchain::NodeId n : s.topology.nodes()) {
      nodes.push_back({{"node", n},
                       {"degree", s.topology.Degree(n)},
                       {"intake_gbps", nfvchain::IntakeCapacity(s.topology, n)}});
    }
    doc["degrees"] = nodes;
    doc["total_flow_gbps"] = nfvchain::TotalFlow(s.demands);
    bool ok = true;
    json checks = json::array();
    if (s.name.starts_with("nsfnet")) {
      for (const auto& c : nfvchain::CheckNsfnetConsistency(s.topology)) {
        checks.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        ok = ok && c.passed;
      }
    }
    doc["checks"] = checks;
    json assumed = json::array();
    for (const auto& v : s.catalog) {
      if (v.assumed) assumed.push_back(v.name);
    }
    doc["assumed_catalog_entries"] = assumed;
    doc["passed"] = ok;
    if (passed != nullptr) *passed = ok ? 1 : 0;
    *out = CopyString(doc.dump(2));
  });
}

}  // extern "C"
