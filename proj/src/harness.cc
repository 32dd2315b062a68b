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

#include "nfvchain/harness.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <tuple>

#include "nfvchain/error.h"

namespace nfvchain {
namespace {

std::string JoinNodes(const std::set<NodeId>& nodes) {
  std::string out;
  for (NodeId n : nodes) {
    if (!out.empty()) out += ',';
    out += std::to_string(n);
  }
  return out;
}

std::string RolesId(const Scenario& scenario, const Strategy& strategy) {
  const NodeRoles roles = EffectiveRoles(scenario, strategy);
  return "dc=" + JoinNodes(roles.dc_nodes) + ";nfv=" + JoinNodes(roles.nfv_nodes);
}

// Compositions of n into parts of size 1..3, in lexicographic order.
void Compositions(int n, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(prefix);
    return;
  }
  for (int part = 1; part <= std::min(3, n); ++part) {
    prefix.push_back(part);
    Compositions(n - part, prefix, out);
    prefix.pop_back();
  }
}

// Ordered selections of m distinct candidates, lexicographic by index.
void Arrangements(std::span<const NodeId> pool, size_t m, std::vector<NodeId>& prefix,
                  std::vector<bool>& used, std::vector<std::vector<NodeId>>& out) {
  if (prefix.size() == m) {
    out.push_back(prefix);
    return;
  }
  for (size_t i = 0; i < pool.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    prefix.push_back(pool[i]);
    Arrangements(pool, m, prefix, used, out);
    prefix.pop_back();
    used[i] = false;
  }
}

std::vector<PlacementConfig> MiddleboxPlacements(const Scenario& scenario,
                                                 std::span<const NodeId> candidates) {
  const int n = static_cast<int>(scenario.chain.size());
  std::vector<std::vector<int>> compositions;
  std::vector<int> prefix;
  Compositions(n, prefix, compositions);
  std::stable_sort(compositions.begin(), compositions.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<PlacementConfig> out;
  for (const auto& parts : compositions) {
    if (parts.size() > candidates.size()) continue;
    std::vector<std::vector<NodeId>> orders;
    std::vector<NodeId> seq;
    std::vector<bool> used(candidates.size(), false);
    Arrangements(candidates, parts.size(), seq, used, orders);
    for (const auto& nodes : orders) {
      Middlebox mb;
      std::string id = "mb=";
      int next = 0;
      for (size_t b = 0; b < parts.size(); ++b) {
        auto& fns = mb.placements[nodes[b]];
        if (b > 0) id += ',';
        id += std::to_string(nodes[b]) + ':';
        for (int i = 0; i < parts[b]; ++i, ++next) {
          if (i > 0) id += '|';
          id += scenario.chain[next];
          fns.push_back(scenario.chain[next]);
        }
      }
      out.push_back({std::move(id), std::move(mb), std::nullopt});
    }
  }
  return out;
}

struct Job {
  size_t family = 0;
  const PlacementConfig* config = nullptr;
  double theta = kUnlimited;
  double traffic = 0.0;
  double upsilon = kUnlimited;
  MemoryMode mode = MemoryMode::kOff;
  // Index of an identical job whose outcome is copied instead of solved.
  std::optional<size_t> reuse;
};

SweepRecord RunJob(const Scenario& base, const Job& job, const std::string& strategy,
                   const SweepOptions& options) {
  SweepRecord rec;
  rec.strategy = strategy;
  rec.placement = job.config->id;
  rec.theta = job.theta;
  rec.traffic_gbps = job.traffic;
  rec.upsilon_gb = job.upsilon;
  rec.status = std::string(StatusName(SolveStatus::kInfeasible));
  try {
    Scenario s = ApplyPlacement(base, *job.config);
    s.budget.theta = job.theta;
    s.budget.upsilon_gb = job.upsilon;
    s.budget.memory_mode = job.mode;
    const SolveResult r = SolveInstance(s, job.config->strategy, {options.k, options.solver});
    rec.status = std::string(StatusName(r.status));
    rec.wall_ms = options.deterministic ? 0.0 : r.stats.wall_ms;
    if (r.has_incumbent()) {
      rec.omega = r.objective();
      rec.max_link_load_gbps = LinkLoads(*r.solution, s.topology).max_load;
      rec.solution = r.solution;
    }
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

std::vector<SweepRecord> RunJobs(const Scenario& scenario, std::span<const double> traffic,
                                 const std::vector<Job>& jobs,
                                 const std::vector<std::string>& strategy_ids,
                                 const SweepOptions& options) {
  std::map<double, Scenario> scaled;
  for (double t : traffic) {
    if (!scaled.contains(t)) scaled.emplace(t, WithAverageTraffic(scenario, t));
  }
  std::vector<SweepRecord> records(jobs.size());
  std::vector<size_t> solve_idx;
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (!jobs[i].reuse) solve_idx.push_back(i);
  }
  ParallelFor(solve_idx.size(), options.workers, [&](size_t i) {
    const Job& job = jobs[solve_idx[i]];
    records[solve_idx[i]] =
        RunJob(scaled.at(job.traffic), job, strategy_ids[job.family], options);
  });
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (!jobs[i].reuse) continue;
    records[i] = records[*jobs[i].reuse];
    records[i].theta = jobs[i].theta;
  }
  return records;
}

// Mean rows per (strategy, theta, traffic, upsilon), in first-seen order.
std::vector<SweepRecord> Aggregate(const std::vector<SweepRecord>& members) {
  using Key = std::tuple<std::string, double, double, double>;
  std::vector<Key> order;
  std::map<Key, std::vector<const SweepRecord*>> groups;
  for (const SweepRecord& r : members) {
    Key key{r.strategy, r.theta, r.traffic_gbps, r.upsilon_gb};
    auto [it, fresh] = groups.try_emplace(key);
    if (fresh) order.push_back(key);
    it->second.push_back(&r);
  }
  std::vector<SweepRecord> out;
  for (const Key& key : order) {
    const auto& rows = groups.at(key);
    SweepRecord agg;
    agg.aggregate = true;
    std::tie(agg.strategy, agg.theta, agg.traffic_gbps, agg.upsilon_gb) = key;
    agg.members = static_cast<int>(rows.size());
    double omega = 0.0, load = 0.0, wall = 0.0;
    bool timeout = false;
    for (const SweepRecord* r : rows) {
      wall += r->wall_ms;
      if (r->status == StatusName(SolveStatus::kTimeout)) timeout = true;
      if (!r->omega) continue;
      ++agg.feasible;
      omega += *r->omega;
      load += r->max_link_load_gbps.value_or(0.0);
    }
    agg.wall_ms = wall;
    agg.placement = "mean(feasible=" + std::to_string(agg.feasible) + "/" +
                    std::to_string(agg.members) + ")";
    if (timeout) {
      agg.status = std::string(StatusName(SolveStatus::kTimeout));
    } else {
      agg.status = std::string(
          StatusName(agg.feasible > 0 ? SolveStatus::kOptimal : SolveStatus::kInfeasible));
    }
    if (agg.feasible > 0) {
      agg.omega = omega / agg.feasible;
      agg.max_link_load_gbps = load / agg.feasible;
    }
    out.push_back(std::move(agg));
  }
  return out;
}

}  // namespace

std::string StrategyFamily::Id() const {
  switch (family) {
    case Family::kMiddlebox: return "mb";
    case Family::kDcOnly: return "dc-only";
    case Family::kDcNfv: return "dc-nfv-" + std::to_string(x);
    case Family::kDcNfvAll: return "dc-nfv-all";
    case Family::kNfvAll: return "nfv-all";
  }
  return "";
}

std::optional<StrategyFamily> ParseFamily(std::string_view id, int x) {
  if (id == "mb") return StrategyFamily{Family::kMiddlebox, 0};
  if (id == "dc-only") return StrategyFamily{Family::kDcOnly, 0};
  if (id == "dc-nfv-all") return StrategyFamily{Family::kDcNfvAll, 0};
  if (id == "nfv-all") return StrategyFamily{Family::kNfvAll, 0};
  if (id == "dc-nfv") return StrategyFamily{Family::kDcNfv, x};
  constexpr std::string_view kPrefix = "dc-nfv-";
  if (id.starts_with(kPrefix)) {
    const std::string digits(id.substr(kPrefix.size()));
    if (digits.empty() || digits.size() > 3 ||
        !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      return std::nullopt;
    }
    return StrategyFamily{Family::kDcNfv, std::stoi(digits)};
  }
  return std::nullopt;
}

std::vector<PlacementConfig> EnumeratePlacements(const Scenario& scenario,
                                                 const StrategyFamily& family,
                                                 std::span<const NodeId> candidates) {
  std::vector<NodeId> pool(candidates.begin(), candidates.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  for (NodeId n : pool) {
    if (!scenario.topology.HasNode(n)) {
      throw Error(ErrorKind::kArgument, "candidate node " + std::to_string(n) + " unknown");
    }
  }
  std::vector<PlacementConfig> out;
  auto per_dc = [&](const Strategy& strategy) {
    for (NodeId dc : scenario.topology.nodes()) {
      PlacementConfig c{"", strategy, dc};
      c.id = RolesId(ApplyPlacement(scenario, c), strategy);
      out.push_back(std::move(c));
    }
  };
  switch (family.family) {
    case Family::kDcOnly:
      per_dc(DcOnly{});
      break;
    case Family::kDcNfvAll:
      per_dc(DcNfvAll{});
      break;
    case Family::kNfvAll: {
      PlacementConfig c{"", NfvAll{}, std::nullopt};
      c.id = RolesId(scenario, c.strategy);
      out.push_back(std::move(c));
      break;
    }
    case Family::kDcNfv: {
      if (family.x < 0 || family.x > static_cast<int>(pool.size())) {
        throw Error(ErrorKind::kArgument,
                    "x=" + std::to_string(family.x) + " exceeds the " +
                        std::to_string(pool.size()) + " candidate nodes");
      }
      std::vector<bool> pick(pool.size(), false);
      std::fill(pick.begin(), pick.begin() + family.x, true);
      do {
        DcNfv dn;
        for (size_t i = 0; i < pool.size(); ++i) {
          if (pick[i]) dn.nfv_nodes.insert(pool[i]);
        }
        per_dc(dn);
      } while (std::prev_permutation(pick.begin(), pick.end()));
      break;
    }
    case Family::kMiddlebox:
      if (pool.empty()) throw Error(ErrorKind::kArgument, "no middle-box candidates");
      out = MiddleboxPlacements(scenario, pool);
      break;
  }
  return out;
}

Scenario ApplyPlacement(const Scenario& scenario, const PlacementConfig& config) {
  Scenario s = scenario;
  if (config.dc) s.roles.dc_nodes = {*config.dc};
  return s;
}

std::vector<SweepRecord> RunSweep(const Scenario& scenario,
                                  std::span<const StrategyFamily> families,
                                  std::span<const double> thetas,
                                  std::span<const double> traffic,
                                  const SweepOptions& options,
                                  std::span<const NodeId> candidates) {
  if (thetas.empty() || traffic.empty()) {
    throw Error(ErrorKind::kArgument, "empty theta or traffic grid");
  }
  std::vector<NodeId> pool(candidates.begin(), candidates.end());
  if (pool.empty()) pool.assign(scenario.roles.nfv_nodes.begin(), scenario.roles.nfv_nodes.end());

  std::vector<std::vector<PlacementConfig>> configs;
  std::vector<std::string> ids;
  for (const StrategyFamily& f : families) {
    configs.push_back(EnumeratePlacements(scenario, f, pool));
    ids.push_back(f.Id());
  }
  std::vector<Job> jobs;
  for (size_t f = 0; f < families.size(); ++f) {
    // Middle-boxes carry no core limit, so one theta stands for all.
    const bool theta_free = families[f].family == Family::kMiddlebox;
    for (const PlacementConfig& c : configs[f]) {
      for (size_t ti = 0; ti < thetas.size(); ++ti) {
        for (size_t ri = 0; ri < traffic.size(); ++ri) {
          Job job{f, &c, thetas[ti], traffic[ri], scenario.budget.upsilon_gb,
                  scenario.budget.memory_mode, std::nullopt};
          if (theta_free && ti > 0) job.reuse = jobs.size() - ti * traffic.size();
          jobs.push_back(job);
        }
      }
    }
  }
  std::vector<SweepRecord> records = RunJobs(scenario, traffic, jobs, ids, options);
  std::vector<SweepRecord> means = Aggregate(records);

  const std::string baseline = StrategyFamily{Family::kDcNfvAll, 0}.Id();
  std::map<std::tuple<double, double>, std::map<std::string, double>> series;
  for (const SweepRecord& m : means) {
    if (m.omega) series[{m.theta, m.traffic_gbps}][m.strategy] = *m.omega;
  }
  auto normalized = [&](const SweepRecord& r) -> std::optional<double> {
    if (!r.omega) return std::nullopt;
    auto it = series.find({r.theta, r.traffic_gbps});
    if (it == series.end()) return std::nullopt;
    auto base = it->second.find(baseline);
    if (base == it->second.end() || !(base->second > 0)) return std::nullopt;
    if (r.aggregate) return Normalize(it->second, baseline).at(r.strategy);
    return *r.omega / base->second;
  };
  for (SweepRecord& r : records) r.omega_norm = normalized(r);
  for (SweepRecord& m : means) m.omega_norm = normalized(m);
  records.insert(records.end(), means.begin(), means.end());
  return records;
}

std::vector<SweepRecord> MemorySweep(const Scenario& scenario,
                                     std::span<const double> upsilons,
                                     std::span<const double> traffic,
                                     MemoryMode mode, const SweepOptions& options) {
  if (mode == MemoryMode::kOff) {
    throw Error(ErrorKind::kArgument, "memory sweep needs a memory mode");
  }
  if (upsilons.empty() || traffic.empty()) {
    throw Error(ErrorKind::kArgument, "empty upsilon or traffic grid");
  }
  const std::vector<NodeId> pool(scenario.roles.nfv_nodes.begin(),
                                 scenario.roles.nfv_nodes.end());
  const StrategyFamily family{Family::kDcNfv, static_cast<int>(pool.size())};
  const std::vector<PlacementConfig> configs = EnumeratePlacements(scenario, family, pool);
  std::vector<Job> jobs;
  for (double u : upsilons) {
    for (double t : traffic) {
      for (const PlacementConfig& c : configs) {
        jobs.push_back({0, &c, kUnlimited, t, u, mode, std::nullopt});
      }
    }
  }
  std::vector<SweepRecord> records = RunJobs(scenario, traffic, jobs, {family.Id()}, options);
  std::vector<SweepRecord> means = Aggregate(records);
  records.insert(records.end(), means.begin(), means.end());
  return records;
}

RandomInstance MakeRandomInstance(uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };
  auto from = [&](std::initializer_list<double> values) {
    return *(values.begin() + pick(0, static_cast<int>(values.size()) - 1));
  };

  const int n = pick(3, 6);
  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 1);
  std::set<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 2; v <= n; ++v) edges.insert({pick(1, v - 1), v});
  for (NodeId a = 1; a <= n; ++a) {
    for (NodeId b = a + 1; b <= n; ++b) {
      if (chance(0.35)) edges.insert({a, b});
    }
  }
  std::vector<Link> links;
  for (const auto& [a, b] : edges) links.push_back({a, b, from({2, 3, 4, 6})});

  RandomInstance out;
  Scenario& s = out.scenario;
  s.name = "random-" + std::to_string(seed);
  s.topology = Topology(nodes, links);
  const int demand_count = pick(1, 3);
  for (int i = 0; i < demand_count; ++i) {
    const NodeId src = pick(1, n);
    NodeId dst = pick(1, n - 1);
    if (dst >= src) ++dst;
    const double gbps = from({0.5, 1, 1.5, 2});
    const bool repeated = std::any_of(s.demands.begin(), s.demands.end(), [&](const Demand& d) {
      return d.source == src && d.dest == dst;
    });
    if (!repeated) s.demands.push_back({src, dst, gbps});
  }
  for (int f = 1; f <= 3; ++f) {
    s.catalog.push_back({"F" + std::to_string(f), from({0.5, 1, 1.5, 2}), from({1, 2}),
                         from({0.5, 1}), false});
  }
  std::vector<std::string> names = {"F1", "F2", "F3"};
  std::shuffle(names.begin(), names.end(), rng);
  s.chain.assign(names.begin(), names.begin() + pick(1, 3));
  s.budget.theta = from({1, 2, 4});
  const int mode = pick(0, 4);
  if (mode >= 3) {
    s.budget.memory_mode = mode == 3 ? MemoryMode::kNonScaling : MemoryMode::kScaling;
    s.budget.upsilon_gb = from({2, 4, 8});
  }
  if (chance(0.6)) s.roles.dc_nodes.insert(pick(1, n));
  for (NodeId v : nodes) {
    if (!s.roles.dc_nodes.contains(v) && chance(0.5)) s.roles.nfv_nodes.insert(v);
  }

  const int kind = pick(s.roles.dc_nodes.empty() ? 1 : 0, 4);
  if (kind == 0) {
    out.strategy = DcOnly{};
  } else if (kind == 1) {
    out.strategy = DcNfv{s.roles.nfv_nodes};
  } else if (kind == 2) {
    out.strategy = DcNfvAll{};
  } else if (kind == 3) {
    out.strategy = NfvAll{};
  } else {
    std::vector<NodeId> order = nodes;
    std::shuffle(order.begin(), order.end(), rng);
    Middlebox mb;
    size_t next = 0;
    for (NodeId v : order) {
      if (next == s.chain.size()) break;
      const int block = std::min<int>(pick(1, 3), static_cast<int>(s.chain.size() - next));
      for (int i = 0; i < block; ++i) mb.placements[v].push_back(s.chain[next++]);
    }
    s.roles.mb_locations = mb.placements;
    out.strategy = std::move(mb);
  }
  out.k = pick(1, 3);
  ValidateScenario(s);
  return out;
}

std::string FormatNumber(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string ToCsv(std::span<const SweepRecord> records) {
  auto opt = [](const std::optional<double>& v) { return v ? FormatNumber(*v) : ""; };
  std::string out(kCsvHeader);
  out += '\n';
  for (const SweepRecord& r : records) {
    out += r.strategy + ',' + CsvField(r.placement) + ',' + FormatNumber(r.theta) + ',' +
           FormatNumber(r.traffic_gbps) + ',' + FormatNumber(r.upsilon_gb) + ',' +
           r.status + ',' + opt(r.omega) + ',' + opt(r.omega_norm) + ',' +
           opt(r.max_link_load_gbps) + ',' + FormatNumber(r.wall_ms) + '\n';
  }
  return out;
}

}  // namespace nfvchain
