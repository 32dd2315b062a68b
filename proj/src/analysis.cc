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

#include "nfvchain/analysis.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <queue>
#include <thread>

#include "nfvchain/error.h"
#include "nfvchain/paths.h"

namespace nfvchain {

double ResourceConsumption(const PlacementSolution& solution) {
  double total = 0.0;
  for (size_t d = 0; d < solution.paths.size(); ++d) {
    total += solution.paths[d].length() * solution.demands[d].gbps;
  }
  return total;
}

LoadProfile LinkLoads(const PlacementSolution& solution, const Topology& topology) {
  LoadProfile profile;
  for (const Arc& arc : topology.Arcs()) profile.loads[arc] = 0.0;
  for (size_t d = 0; d < solution.paths.size(); ++d) {
    const auto& nodes = solution.paths[d].nodes;
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
      profile.loads[{nodes[i], nodes[i + 1]}] += solution.demands[d].gbps;
    }
  }
  for (const auto& [arc, load] : profile.loads) {
    profile.max_load = std::max(profile.max_load, load);
    profile.total += load;
  }
  if (!profile.loads.empty()) profile.mean_load = profile.total / profile.loads.size();
  return profile;
}

double ShortestPathBound(const Topology& topology, std::span<const Demand> demands) {
  double bound = 0.0;
  for (const Demand& d : demands) {
    const auto paths = KShortestPaths(topology, d.source, d.dest, 1);
    if (paths.empty()) {
      throw Error(ErrorKind::kModel, "demand (" + std::to_string(d.source) + "," +
                                         std::to_string(d.dest) + ") is disconnected");
    }
    bound += d.gbps * paths.front().length();
  }
  return bound;
}

SolveResult SolveInstance(const Scenario& scenario, const Strategy& strategy,
                          const InstanceOptions& options, IlpModel* model_out) {
  const NodeRoles roles = EffectiveRoles(scenario, strategy);
  const PathSet paths = BuildPathSet(scenario.topology, roles, scenario.demands,
                                     options.k, scenario.chain);
  IlpModel model = Compile(scenario, strategy, paths);
  SolveResult result = Solve(model, options.solver);
  if (model_out != nullptr) *model_out = std::move(model);
  return result;
}

void ParallelFor(size_t count, int workers, const std::function<void(size_t)>& body) {
  size_t threads = workers > 0 ? static_cast<size_t>(workers)
                               : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::set<NodeId> CongestionReport::Infeasible(size_t index) const {
  std::set<NodeId> out;
  for (const auto& [node, f] : status.at(index)) {
    if (f == Feasibility::kInfeasible) out.insert(node);
  }
  return out;
}

std::set<NodeId> CongestionReport::NewlyInfeasible(size_t index) const {
  std::set<NodeId> out = Infeasible(index);
  if (index > 0) {
    for (NodeId n : Infeasible(index - 1)) out.erase(n);
  }
  return out;
}

CongestionReport CongestionSweep(const Scenario& scenario,
                                 std::span<const double> traffic,
                                 std::span<const NodeId> candidates,
                                 const InstanceOptions& options, int workers) {
  if (!std::is_sorted(traffic.begin(), traffic.end())) {
    throw Error(ErrorKind::kArgument, "traffic values must be ascending");
  }
  CongestionReport report;
  report.traffic.assign(traffic.begin(), traffic.end());
  report.candidates.assign(candidates.begin(), candidates.end());
  const size_t nc = candidates.size();
  std::vector<Feasibility> cells(traffic.size() * nc, Feasibility::kUnknown);
  ParallelFor(cells.size(), workers, [&](size_t i) {
    Scenario s = WithAverageTraffic(scenario, traffic[i / nc]);
    s.roles.dc_nodes = {candidates[i % nc]};
    Feasibility f = Feasibility::kInfeasible;
    try {
      const SolveResult r = SolveInstance(s, DcOnly{}, options);
      if (r.status == SolveStatus::kOptimal) f = Feasibility::kFeasible;
      if (r.status == SolveStatus::kTimeout) {
        f = r.has_incumbent() ? Feasibility::kFeasible : Feasibility::kUnknown;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kModel) throw;
    }
    cells[i] = f;
  });

  for (size_t t = 0; t < traffic.size(); ++t) {
    std::map<NodeId, Feasibility> row;
    int infeasible = 0;
    bool unknown = false;
    for (size_t c = 0; c < nc; ++c) {
      const Feasibility f = cells[t * nc + c];
      row[candidates[c]] = f;
      if (f == Feasibility::kInfeasible) ++infeasible;
      if (f == Feasibility::kUnknown) {
        unknown = true;
        report.warnings.push_back("timeout at traffic " + std::to_string(traffic[t]) +
                                  ", DC node " + std::to_string(candidates[c]));
      }
      if (t > 0 && f == Feasibility::kFeasible &&
          report.status[t - 1].at(candidates[c]) == Feasibility::kInfeasible) {
        report.monotone = false;
        report.warnings.push_back("DC node " + std::to_string(candidates[c]) +
                                  " feasible again at traffic " +
                                  std::to_string(traffic[t]));
      }
    }
    report.status.push_back(std::move(row));
    report.infeasible_count.push_back(infeasible);
    if (!report.congestion_point && !unknown && nc > 0 &&
        infeasible == static_cast<int>(nc)) {
      report.congestion_point = traffic[t];
    }
  }
  return report;
}

InflectionResult InflectionPoint(const Scenario& scenario, const Strategy& strategy,
                                 std::span<const double> thetas,
                                 const InstanceOptions& options, bool classify) {
  if (!std::is_sorted(thetas.begin(), thetas.end())) {
    throw Error(ErrorKind::kArgument, "theta values must be ascending");
  }
  InflectionResult out;
  out.bound = ShortestPathBound(scenario.topology, scenario.demands);
  for (double theta : thetas) {
    Scenario s = scenario;
    s.budget.theta = theta;
    InflectionProbe probe;
    probe.theta = theta;
    // Any solution at the bound is optimal, so a cutoff search settles it.
    InstanceOptions at_bound = options;
    at_bound.solver.objective_cutoff = out.bound;
    SolveResult r = SolveInstance(s, strategy, at_bound);
    const bool cutoff_timed_out = r.status == SolveStatus::kTimeout;
    if (r.status == SolveStatus::kOptimal) {
      probe.status = SolveStatus::kOptimal;
      probe.at_bound = true;
      probe.objective = r.objective();
    } else if (!classify) {
      probe.status = r.status;
      probe.objective = std::numeric_limits<double>::quiet_NaN();
      probe.decided = !cutoff_timed_out;
      if (!probe.decided) out.any_unknown = true;
    } else {
      // Above the bound (or undecided): classify with a full solve.
      r = SolveInstance(s, strategy, options);
      probe.status = r.status;
      probe.objective = r.objective();
      if (r.has_incumbent() && r.objective() <= out.bound + options.solver.tolerance) {
        probe.at_bound = true;
      } else if (cutoff_timed_out && r.status == SolveStatus::kTimeout) {
        probe.decided = false;
      }
      if (r.status == SolveStatus::kInfeasible) out.any_infeasible = true;
      if (!probe.decided) out.any_unknown = true;
    }
    out.probes.push_back(probe);
    if (probe.at_bound && !out.theta) out.theta = theta;
  }
  return out;
}

std::map<std::string, double> Normalize(const std::map<std::string, double>& series,
                                        const std::string& baseline) {
  auto it = series.find(baseline);
  if (it == series.end()) throw Error(ErrorKind::kArgument, "baseline " + baseline + " missing");
  if (!(it->second > 0)) throw Error(ErrorKind::kArgument, "baseline " + baseline + " is not positive");
  std::map<std::string, double> out;
  for (const auto& [key, value] : series) out[key] = key == baseline ? 1.0 : value / it->second;
  return out;
}

}  // namespace nfvchain
