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

#include "nfvchain/solver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "nfvchain/error.h"

namespace nfvchain {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kEps = 1e-9;
constexpr int kMultiplierIterations = 400;
// Searches restarted with refreshed multipliers after improved incumbents.
constexpr int kMaxRestarts = 4;
constexpr uint64_t kDiveNodes = 20000;

double MsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Resource draw of one placement option on one NFV node.
struct Usage {
  int node = 0;  // dense NFV index
  double cores = 0.0;
  double mem = 0.0;
};

struct Option {
  std::vector<NodeId> hosts;  // per chain function
  std::vector<Usage> usage;   // sorted by node, nonzero entries only
  double pen = 0.0;           // multiplier-weighted node usage
  double cores = 0.0;         // totals over nodes
  double mem = 0.0;
};

// Dense max-flow (Dinic) over a few dozen vertices.
class MaxFlow {
 public:
  void Reset(int n) {
    n_ = n;
    head_.assign(n, -1);
    to_.clear();
    cap_.clear();
    next_.clear();
  }
  void Add(int u, int v, double c) {
    to_.push_back(v);
    cap_.push_back(c);
    next_.push_back(head_[u]);
    head_[u] = static_cast<int>(to_.size()) - 1;
    to_.push_back(u);
    cap_.push_back(0.0);
    next_.push_back(head_[v]);
    head_[v] = static_cast<int>(to_.size()) - 1;
  }
  double Run(int s, int t) {
    double total = 0.0;
    while (Levels(s, t)) {
      iter_ = head_;
      for (;;) {
        const double f = Push(s, t, std::numeric_limits<double>::infinity());
        if (f <= kFlowEps) break;
        total += f;
      }
    }
    return total;
  }

 private:
  static constexpr double kFlowEps = 1e-12;

  bool Levels(int s, int t) {
    level_.assign(n_, -1);
    std::vector<int> queue = {s};
    level_[s] = 0;
    for (size_t i = 0; i < queue.size(); ++i) {
      for (int e = head_[queue[i]]; e >= 0; e = next_[e]) {
        if (cap_[e] > kFlowEps && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[queue[i]] + 1;
          queue.push_back(to_[e]);
        }
      }
    }
    return level_[t] >= 0;
  }
  double Push(int u, int t, double f) {
    if (u == t) return f;
    for (int& e = iter_[u]; e >= 0; e = next_[e]) {
      const int v = to_[e];
      if (cap_[e] > kFlowEps && level_[v] == level_[u] + 1) {
        const double got = Push(v, t, std::min(f, cap_[e]));
        if (got > kFlowEps) {
          cap_[e] -= got;
          cap_[e ^ 1] += got;
          return got;
        }
      }
    }
    return 0.0;
  }

  int n_ = 0;
  std::vector<int> head_, to_, next_, level_, iter_;
  std::vector<double> cap_;
};

struct Route {
  int index = 0;
  double cost = 0.0;
  std::vector<int> arcs;
  uint64_t node_mask = 0;
  std::vector<Option> options;
  double arc_pen = 0.0;  // multiplier-weighted link usage
};

struct DemandData {
  int input_index = 0;
  double flow = 0.0;
  int source_bit = -1;
  int dest_bit = -1;
  std::vector<Route> routes;  // ascending cost; only routes with options
};

// a <= b on every node.
bool UsageLeq(const std::vector<Usage>& a, const std::vector<Usage>& b) {
  size_t j = 0;
  for (const Usage& u : a) {
    while (j < b.size() && b[j].node < u.node) ++j;
    if (j == b.size() || b[j].node != u.node) return false;
    if (u.cores > b[j].cores + kEps || u.mem > b[j].mem + kEps) return false;
  }
  return true;
}

class BranchAndBound {
 public:
  BranchAndBound(const IlpModel& model, const SolverConfig& config)
      : model_(model), st_(model.structure), config_(config) {}

  SolveResult Run() {
    start_ = Clock::now();
    Prepare();
    if (feasible_so_far_) {
      OptimizeMultipliers(kUnlimited);
      Probe();
      if (has_best_ && !stopped_) {
        OptimizeMultipliers(best_cost_);
        for (;;) {
          restart_ = false;
          Dfs(0, 0.0);
          if (!restart_ || stopped_) break;
          OptimizeMultipliers(best_cost_);
        }
      }
    }

    SolveResult result;
    result.stats.nodes = nodes_;
    if (has_best_) {
      result.assignment = EncodeSolution(model_, best_routes_, best_hosts_);
      try {
        result.solution = DecodeSolution(model_, result.assignment);
      } catch (const Error& e) {
        throw std::logic_error(std::string("solver produced an invalid point: ") +
                               e.what());
      }
    }
    result.status = stopped_ ? SolveStatus::kTimeout
                             : (has_best_ ? SolveStatus::kOptimal
                                          : SolveStatus::kInfeasible);
    result.stats.wall_ms = MsSince(start_);
    return result;
  }

 private:
  // Searches for any solution under a rising objective cutoff, starting at
  // the root bound. Each failed probe proves there is none that cheap.
  void Probe() {
    double root = 0.0;
    cutoff_ = kUnlimited;
    if (!ForwardCheck(0, 0.0, &root)) return;
    double ceiling = 0.0;
    double step = std::numeric_limits<double>::infinity();
    for (const DemandData& dd : demands_) {
      ceiling += dd.routes.back().cost;
      for (size_t i = 1; i < dd.routes.size(); ++i) {
        const double gap = dd.routes[i].cost - dd.routes[0].cost;
        if (gap > 10 * config_.tolerance) step = std::min(step, gap);
      }
    }
    if (std::isinf(step)) step = 1.0;
    probing_ = true;
    // A plain dive supplies a fallback incumbent for timeouts.
    cutoff_ = config_.objective_cutoff;
    dive_limit_ = nodes_ + kDiveNodes;
    restart_ = false;
    Dfs(0, 0.0);
    dive_limit_ = 0;
    if (stopped_ || (!restart_ && !has_best_)) {
      probing_ = false;
      return;  // timed out, or the dive exhausted the tree
    }
    bool have_fallback = has_best_;
    const double fallback_cost = best_cost_;
    const std::vector<int> fallback_routes = best_routes_;
    const std::vector<std::vector<NodeId>> fallback_hosts = best_hosts_;
    has_best_ = false;
    if (have_fallback && fallback_cost <= root + config_.tolerance) {
      has_best_ = true;  // already at the bound
      probing_ = false;
      cutoff_ = config_.objective_cutoff;
      return;
    }
    double cutoff = std::min(root, config_.objective_cutoff);
    for (;;) {
      cutoff_ = cutoff;
      restart_ = false;
      Dfs(0, 0.0);
      if (has_best_) break;
      if (stopped_) {
        has_best_ = have_fallback;
        best_cost_ = fallback_cost;
        best_routes_ = fallback_routes;
        best_hosts_ = fallback_hosts;
        break;
      }
      if (cutoff >= ceiling || cutoff >= config_.objective_cutoff) break;
      cutoff = std::min({cutoff + step, ceiling, config_.objective_cutoff});
      step *= 2.0;
    }
    probing_ = false;
    cutoff_ = config_.objective_cutoff;
  }

  void Prepare() {
    cores_active_ = !st_.middlebox && !std::isinf(st_.theta);
    mem_active_ = !st_.middlebox && st_.memory_mode != MemoryMode::kOff &&
                  !std::isinf(st_.upsilon_gb);
    int idx = 0;
    for (NodeId v : st_.nfv_nodes) nfv_index_[v] = idx++;
    core_used_.assign(idx, 0.0);
    mem_used_.assign(idx, 0.0);

    std::map<Arc, int> arc_id;
    std::set<NodeId> all_nodes;
    for (const auto& [arc, cap] : st_.arc_capacity) {
      arc_id[arc] = static_cast<int>(arc_cap_.size());
      arc_cap_.push_back(cap);
      arc_to_.push_back(arc.to);
      arc_from_.push_back(arc.from);
      all_nodes.insert(arc.from);
      all_nodes.insert(arc.to);
    }
    for (const Demand& d : st_.demands) {
      all_nodes.insert(d.source);
      all_nodes.insert(d.dest);
    }
    arc_load_.assign(arc_cap_.size(), 0.0);
    use_masks_ = all_nodes.size() <= 64;
    if (use_masks_) {
      int bit = 0;
      for (NodeId n : all_nodes) node_bit_[n] = bit++;
      in_arcs_.resize(bit);
      out_arcs_.resize(bit);
      for (size_t a = 0; a < arc_cap_.size(); ++a) {
        in_arcs_[node_bit_[arc_to_[a]]].push_back(static_cast<int>(a));
        out_arcs_[node_bit_[arc_from_[a]]].push_back(static_cast<int>(a));
      }
    }

    const int n = static_cast<int>(st_.demands.size());
    demands_.resize(n);
    for (int d = 0; d < n; ++d) {
      DemandData& dd = demands_[d];
      const Demand& dem = st_.demands[d];
      dd.input_index = d;
      dd.flow = dem.gbps;
      if (use_masks_) {
        dd.source_bit = node_bit_[dem.source];
        dd.dest_bit = node_bit_[dem.dest];
      }
      for (size_t p = 0; p < st_.paths[d].size(); ++p) {
        const Path& path = st_.paths[d][p];
        Route route;
        route.index = static_cast<int>(p);
        route.cost = path.length() * dem.gbps;
        bool arcs_ok = true;
        for (size_t i = 0; i + 1 < path.nodes.size(); ++i) {
          auto it = arc_id.find({path.nodes[i], path.nodes[i + 1]});
          if (it == arc_id.end()) {
            arcs_ok = false;
            break;
          }
          route.arcs.push_back(it->second);
          if (arc_cap_[it->second] + kEps < dem.gbps) arcs_ok = false;
        }
        if (!arcs_ok) continue;
        if (use_masks_) {
          for (NodeId v : path.nodes) route.node_mask |= uint64_t{1} << node_bit_[v];
        }
        std::vector<NodeId> hosts(st_.chain.size(), 0);
        EnumerateOptions(path, dem, 0, 0, 0, hosts, route.options);
        PruneDominated(route.options);
        if (!route.options.empty()) dd.routes.push_back(std::move(route));
      }
      if (dd.routes.empty()) feasible_so_far_ = false;
    }

    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    if (config_.branch_order == BranchOrder::kFlowDescending) {
      std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
        return demands_[a].flow > demands_[b].flow;
      });
    }
    chosen_route_.assign(n, -1);
    chosen_hosts_.assign(n, {});
    fixed_.assign(n, false);
    open_min_.assign(n, 0.0);
    open_lag_.assign(n, 0.0);
    open_mask_.assign(n, 0);
  }

  void EnumerateOptions(const Path& path, const Demand& dem, size_t f, size_t min_pos,
                        NodeId dc_lock, std::vector<NodeId>& hosts,
                        std::vector<Option>& out) {
    if (f == st_.chain.size()) {
      Option opt;
      opt.hosts = hosts;
      std::map<int, Usage> usage;
      for (size_t k = 0; k < hosts.size(); ++k) {
        auto it = nfv_index_.find(hosts[k]);
        if (it == nfv_index_.end() || st_.middlebox) continue;
        Usage& u = usage[it->second];
        u.node = it->second;
        if (cores_active_) u.cores += dem.gbps * st_.chain[k].cores_per_gbps;
        if (mem_active_) {
          u.mem += st_.memory_mode == MemoryMode::kNonScaling
                       ? st_.chain[k].install_mem_gb
                       : dem.gbps * st_.chain[k].mem_per_gbps;
        }
      }
      for (const auto& [node, u] : usage) {
        if (u.cores > st_.theta + kEps || u.mem > st_.upsilon_gb + kEps) return;
        if (u.cores > 0.0 || u.mem > 0.0) opt.usage.push_back(u);
        opt.cores += u.cores;
        opt.mem += u.mem;
      }
      out.push_back(std::move(opt));
      return;
    }
    if (dc_lock != 0) {
      hosts[f] = dc_lock;
      EnumerateOptions(path, dem, f + 1, min_pos, dc_lock, hosts, out);
      return;
    }
    for (size_t pos = min_pos; pos < path.nodes.size(); ++pos) {
      const NodeId v = path.nodes[pos];
      if (st_.middlebox) {
        if (v != st_.fixed_node[f]) continue;
      } else if (!st_.dc_nodes.contains(v) && !st_.nfv_nodes.contains(v)) {
        continue;
      }
      hosts[f] = v;
      EnumerateOptions(path, dem, f + 1, pos, st_.dc_nodes.contains(v) ? v : 0,
                       hosts, out);
    }
  }

  void PruneDominated(std::vector<Option>& options) const {
    if (options.empty()) return;
    if (!cores_active_ && !mem_active_) {
      options.resize(1);
      return;
    }
    std::vector<bool> drop(options.size(), false);
    for (size_t a = 0; a < options.size(); ++a) {
      if (drop[a]) continue;
      for (size_t b = 0; b < options.size(); ++b) {
        if (a == b || drop[b]) continue;
        // b is dropped when a is no worse everywhere; identical usage keeps
        // the earlier option.
        if (UsageLeq(options[a].usage, options[b].usage) &&
            (b > a || !UsageLeq(options[b].usage, options[a].usage))) {
          drop[b] = true;
        }
      }
    }
    std::vector<Option> kept;
    for (size_t i = 0; i < options.size(); ++i) {
      if (!drop[i]) kept.push_back(std::move(options[i]));
    }
    options = std::move(kept);
  }

  bool RouteFits(const Route& r, double flow) const {
    for (int a : r.arcs) {
      if (arc_load_[a] + flow > arc_cap_[a] + kEps) return false;
    }
    return true;
  }

  bool OptionFits(const Option& o) const {
    for (const Usage& u : o.usage) {
      if (core_used_[u.node] + u.cores > st_.theta + kEps) return false;
      if (mem_used_[u.node] + u.mem > st_.upsilon_gb + kEps) return false;
    }
    return true;
  }

  // Highest node utilization an option would leave behind; options that
  // spread load are tried first.
  double Crowding(const Option& o) const {
    double worst = 0.0;
    for (const Usage& u : o.usage) {
      if (cores_active_) worst = std::max(worst, (core_used_[u.node] + u.cores) / st_.theta);
      if (mem_active_) {
        worst = std::max(worst, (mem_used_[u.node] + u.mem) / st_.upsilon_gb);
      }
    }
    return worst + 1e-3 * o.pen;
  }

  void AddRoute(const Route& r, double flow, double sign) {
    for (int a : r.arcs) arc_load_[a] += sign * flow;
  }

  void AddOption(const Option& o, double sign) {
    for (const Usage& u : o.usage) {
      core_used_[u.node] += sign * u.cores;
      mem_used_[u.node] += sign * u.mem;
    }
  }

  // Multipliers on node cores, node memory and arc capacity. For any
  // nonnegative multipliers, the committed cost plus the penalized cheapest
  // choice of every open demand minus the penalized residual capacity is a
  // lower bound on every completion.
  void ApplyMultipliers() {
    for (DemandData& dd : demands_) {
      for (Route& r : dd.routes) {
        r.arc_pen = 0.0;
        for (int a : r.arcs) r.arc_pen += lam_arc_[a] * dd.flow;
        for (Option& o : r.options) {
          o.pen = 0.0;
          for (const Usage& u : o.usage) {
            o.pen += lam_core_[u.node] * u.cores + lam_mem_[u.node] * u.mem;
          }
        }
      }
    }
  }

  double ResidualPenalty() const {
    double total = 0.0;
    for (size_t v = 0; v < core_used_.size(); ++v) {
      if (cores_active_) total += lam_core_[v] * (st_.theta - core_used_[v]);
      if (mem_active_) total += lam_mem_[v] * (st_.upsilon_gb - mem_used_[v]);
    }
    for (size_t a = 0; a < arc_cap_.size(); ++a) {
      total += lam_arc_[a] * (arc_cap_[a] - arc_load_[a]);
    }
    return total;
  }

  // Projected subgradient ascent on the root relaxation. Keeps the best
  // multipliers found, then orders each route's options by penalty.
  void OptimizeMultipliers(double upper) {
    const size_t nv = core_used_.size();
    const size_t na = arc_cap_.size();
    lam_core_.resize(nv, 0.0);
    lam_mem_.resize(nv, 0.0);
    lam_arc_.resize(na, 0.0);
    std::vector<double> best_core = lam_core_;
    std::vector<double> best_mem = lam_mem_;
    std::vector<double> best_arc = lam_arc_;
    double best_lb = -std::numeric_limits<double>::infinity();
    double mu = 2.0;
    int stall = 0;
    std::vector<double> g_core(nv), g_mem(nv), g_arc(na);
    for (int it = 0; it < kMultiplierIterations; ++it) {
      ApplyMultipliers();
      double lb = -ResidualPenalty();
      for (size_t v = 0; v < nv; ++v) {
        g_core[v] = cores_active_ ? -st_.theta : 0.0;
        g_mem[v] = mem_active_ ? -st_.upsilon_gb : 0.0;
      }
      for (size_t a = 0; a < na; ++a) g_arc[a] = -arc_cap_[a];
      for (const DemandData& dd : demands_) {
        const Route* best_r = nullptr;
        const Option* best_o = nullptr;
        double best = std::numeric_limits<double>::infinity();
        for (const Route& r : dd.routes) {
          for (const Option& o : r.options) {
            const double val = r.cost + r.arc_pen + o.pen;
            if (val < best) {
              best = val;
              best_r = &r;
              best_o = &o;
            }
          }
        }
        lb += best;
        for (int a : best_r->arcs) g_arc[a] += dd.flow;
        for (const Usage& u : best_o->usage) {
          if (cores_active_) g_core[u.node] += u.cores;
          if (mem_active_) g_mem[u.node] += u.mem;
        }
      }
      if (lb > best_lb + 1e-12) {
        best_lb = lb;
        best_core = lam_core_;
        best_mem = lam_mem_;
        best_arc = lam_arc_;
        stall = 0;
      } else if (++stall >= 10) {
        mu /= 2.0;
        stall = 0;
        if (mu < 1e-4) break;
      }
      double norm2 = 0.0;
      auto project = [&](std::vector<double>& lam, std::vector<double>& g) {
        for (size_t i = 0; i < lam.size(); ++i) {
          if (lam[i] <= 0.0 && g[i] < 0.0) g[i] = 0.0;
          norm2 += g[i] * g[i];
        }
      };
      project(lam_core_, g_core);
      project(lam_mem_, g_mem);
      project(lam_arc_, g_arc);
      if (norm2 < 1e-12) break;
      const double target = std::isinf(upper)
                                ? std::max(best_lb * 1.05, best_lb + 1.0)
                                : upper;
      const double step = mu * (target - lb) / norm2;
      if (!(step > 0.0)) break;
      auto update = [step](std::vector<double>& lam, const std::vector<double>& g) {
        for (size_t i = 0; i < lam.size(); ++i) lam[i] = std::max(0.0, lam[i] + step * g[i]);
      };
      update(lam_core_, g_core);
      update(lam_mem_, g_mem);
      update(lam_arc_, g_arc);
    }
    lam_core_ = best_core;
    lam_mem_ = best_mem;
    lam_arc_ = best_arc;
    ApplyMultipliers();
    for (DemandData& dd : demands_) {
      for (Route& r : dd.routes) {
        std::stable_sort(r.options.begin(), r.options.end(),
                         [](const Option& a, const Option& b) { return a.pen < b.pen; });
      }
    }
  }

  // Smallest penalty among options that fit the residual capacities, or
  // infinity.
  double MinFittingPenalty(const Route& r) const {
    double best = std::numeric_limits<double>::infinity();
    for (const Option& o : r.options) {
      if (o.pen < best && OptionFits(o)) best = o.pen;
    }
    return best;
  }

  // Every open demand must still have a route with a fitting option. Fills
  // open_min_ / open_lag_ / open_mask_ and checks flows forced through each
  // node against the node's residual in/out capacity.
  bool ForwardCheck(int depth, double committed, double* bound) {
    double plain = committed;
    double lag = committed;
    const int n = static_cast<int>(order_.size());
    for (int k = depth; k < n; ++k) {
      const DemandData& dd = demands_[order_[k]];
      double best = std::numeric_limits<double>::infinity();
      double best_lag = std::numeric_limits<double>::infinity();
      uint64_t mask = ~uint64_t{0};
      for (const Route& r : dd.routes) {
        if (!RouteFits(r, dd.flow)) continue;
        const double pen = MinFittingPenalty(r);
        if (std::isinf(pen)) continue;
        best = std::min(best, r.cost);
        best_lag = std::min(best_lag, r.cost + r.arc_pen + pen);
        mask &= r.node_mask;
      }
      if (std::isinf(best)) return false;
      open_min_[order_[k]] = best;
      open_lag_[order_[k]] = best_lag;
      open_mask_[order_[k]] = mask;
      plain += best;
      lag += best_lag;
    }
    residual_pen_ = ResidualPenalty();
    plain_total_ = plain - committed;
    lag_total_ = lag - committed;
    *bound = std::max(plain, lag - residual_pen_);
    if (Pruned(*bound)) return true;  // caller prunes
    if (!CapacityFlowHolds(depth, committed)) return false;
    if (!use_masks_) return true;

    const int bits = static_cast<int>(in_arcs_.size());
    for (int w = 0; w < bits; ++w) {
      const uint64_t bit = uint64_t{1} << w;
      double need_in = 0.0;
      double need_out = 0.0;
      for (int k = depth; k < n; ++k) {
        const DemandData& dd = demands_[order_[k]];
        if (!(open_mask_[order_[k]] & bit)) continue;
        if (dd.source_bit != w) need_in += dd.flow;
        if (dd.dest_bit != w) need_out += dd.flow;
      }
      if (need_in == 0.0 && need_out == 0.0) continue;
      double room_in = 0.0;
      for (int a : in_arcs_[w]) room_in += arc_cap_[a] - arc_load_[a];
      double room_out = 0.0;
      for (int a : out_arcs_[w]) room_out += arc_cap_[a] - arc_load_[a];
      if (need_in > room_in + kEps || need_out > room_out + kEps) return false;
    }
    return true;
  }

  // Fractional relaxation of the node budgets: every open demand needs at
  // least its smallest remaining core (memory) draw, spread over the NFV
  // nodes its admissible options touch. Routes too long to beat the
  // incumbent (or cutoff) are not admissible.
  bool CapacityFlowHolds(int depth, double committed) {
    const size_t nv = core_used_.size();
    if (nv == 0 || nv > 64 || (!cores_active_ && !mem_active_)) return true;
    double upper = has_best_ ? best_cost_ : cutoff_;
    const int n = static_cast<int>(order_.size());
    struct Need {
      double cores = std::numeric_limits<double>::infinity();
      double mem = std::numeric_limits<double>::infinity();
      uint64_t nodes = 0;
    };
    std::vector<Need> needs;
    for (int k = depth; k < n; ++k) {
      const int d = order_[k];
      const DemandData& dd = demands_[d];
      const double slack =
          upper + config_.tolerance - (committed + plain_total_ - open_min_[d]);
      Need need;
      for (const Route& r : dd.routes) {
        if (r.cost > slack) break;
        if (!RouteFits(r, dd.flow)) continue;
        for (const Option& o : r.options) {
          if (!OptionFits(o)) continue;
          need.cores = std::min(need.cores, o.cores);
          need.mem = std::min(need.mem, o.mem);
          for (const Usage& u : o.usage) need.nodes |= uint64_t{1} << u.node;
        }
      }
      if (std::isinf(need.cores)) return false;
      if (need.cores > kEps || need.mem > kEps) needs.push_back(need);
    }
    if (needs.empty()) return true;
    auto feasible = [&](bool cores) {
      const int m = static_cast<int>(needs.size());
      const int source = 0;
      const int sink = m + static_cast<int>(nv) + 1;
      flow_.Reset(sink + 1);
      double total = 0.0;
      for (int i = 0; i < m; ++i) {
        const double amount = cores ? needs[i].cores : needs[i].mem;
        if (amount <= kEps) continue;
        total += amount;
        flow_.Add(source, 1 + i, amount);
        for (size_t v = 0; v < nv; ++v) {
          if (needs[i].nodes >> v & 1u) {
            flow_.Add(1 + i, 1 + m + static_cast<int>(v),
                      std::numeric_limits<double>::infinity());
          }
        }
      }
      for (size_t v = 0; v < nv; ++v) {
        const double room = cores ? st_.theta - core_used_[v] : st_.upsilon_gb - mem_used_[v];
        if (room > 0) flow_.Add(1 + m + static_cast<int>(v), sink, room);
      }
      return flow_.Run(source, sink) >= total - 1e-7;
    };
    if (cores_active_ && !feasible(true)) return false;
    if (mem_active_ && !feasible(false)) return false;
    return true;
  }

  // Whether completing the current partial assignment could yield a route
  // vector lexicographically smaller than the incumbent (input order).
  bool MayBeatIncumbent() const {
    for (size_t i = 0; i < best_routes_.size(); ++i) {
      if (fixed_[i]) {
        if (chosen_route_[i] < best_routes_[i]) return true;
        if (chosen_route_[i] > best_routes_[i]) return false;
        continue;
      }
      const auto& routes = demands_[i].routes;
      if (routes.empty() || best_routes_[i] > routes.front().index) return true;
    }
    return false;
  }

  bool Pruned(double bound) const {
    if (!has_best_) return bound > cutoff_ + config_.tolerance;
    if (bound > best_cost_ + config_.tolerance) return true;
    if (bound >= best_cost_ - config_.tolerance) return !MayBeatIncumbent();
    return false;
  }

  bool OutOfBudget() {
    if (config_.node_limit > 0 && nodes_ >= config_.node_limit) return true;
    if (config_.time_limit_s > 0 && (nodes_ & 255) == 0 &&
        MsSince(start_) > config_.time_limit_s * 1000.0) {
      return true;
    }
    return false;
  }

  void Dfs(int depth, double committed) {
    if (stopped_ || restart_) return;
    ++nodes_;
    if (dive_limit_ > 0 && nodes_ >= dive_limit_) {
      restart_ = true;
      return;
    }
    if (OutOfBudget()) {
      stopped_ = true;
      return;
    }
    const int n = static_cast<int>(order_.size());
    if (depth == n) {
      Record(committed);
      return;
    }
    double bound = 0.0;
    if (!ForwardCheck(depth, committed, &bound)) return;
    if (Pruned(bound)) return;

    const int d = order_[depth];
    DemandData& dd = demands_[d];
    const double rest_plain = plain_total_ - open_min_[d];
    const double rest_lag = lag_total_ - open_lag_[d] - residual_pen_;
    fixed_[d] = true;
    for (const Route& r : dd.routes) {
      if (!RouteFits(r, dd.flow)) continue;
      chosen_route_[d] = r.index;
      const double cost = committed + r.cost;
      const double pen = MinFittingPenalty(r);
      if (std::isinf(pen)) continue;
      const double route_lag = cost + r.arc_pen + rest_lag;
      if (Pruned(std::max(cost + rest_plain, route_lag + pen))) continue;
      AddRoute(r, dd.flow, 1.0);
      std::vector<std::pair<double, const Option*>> ranked;
      for (const Option& o : r.options) {
        if (!OptionFits(o)) continue;
        ranked.emplace_back(Crowding(o), &o);
      }
      std::stable_sort(ranked.begin(), ranked.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [score, op] : ranked) {
        const Option& o = *op;
        if (Pruned(std::max(cost + rest_plain, route_lag + o.pen))) continue;
        AddOption(o, 1.0);
        chosen_hosts_[d] = o.hosts;
        Dfs(depth + 1, cost);
        AddOption(o, -1.0);
        if (stopped_ || restart_) break;
      }
      AddRoute(r, dd.flow, -1.0);
      if (stopped_ || restart_) break;
    }
    fixed_[d] = false;
    chosen_route_[d] = -1;
  }

  void Record(double cost) {
    bool take = !has_best_ || cost < best_cost_ - config_.tolerance;
    if (!take && cost <= best_cost_ + config_.tolerance) {
      take = std::lexicographical_compare(chosen_route_.begin(), chosen_route_.end(),
                                          best_routes_.begin(), best_routes_.end());
    }
    if (!take) return;
    if (probing_) {
      restart_ = true;
    } else if (restarts_left_ > 0 && (!has_best_ || cost < best_cost_ - config_.tolerance)) {
      --restarts_left_;
      restart_ = true;
    }
    has_best_ = true;
    best_cost_ = cost;
    best_routes_ = chosen_route_;
    best_hosts_ = chosen_hosts_;
  }

  const IlpModel& model_;
  const ModelStructure& st_;
  SolverConfig config_;
  Clock::time_point start_;

  bool cores_active_ = false;
  bool mem_active_ = false;
  std::map<NodeId, int> nfv_index_;
  std::vector<double> core_used_;
  std::vector<double> mem_used_;
  std::vector<double> arc_cap_;
  std::vector<double> arc_load_;
  std::vector<NodeId> arc_from_;
  std::vector<NodeId> arc_to_;
  bool use_masks_ = false;
  std::map<NodeId, int> node_bit_;
  std::vector<std::vector<int>> in_arcs_;
  std::vector<std::vector<int>> out_arcs_;

  std::vector<DemandData> demands_;
  std::vector<int> order_;
  bool feasible_so_far_ = true;

  std::vector<int> chosen_route_;
  std::vector<std::vector<NodeId>> chosen_hosts_;
  std::vector<bool> fixed_;
  std::vector<double> open_min_;
  std::vector<double> open_lag_;
  std::vector<uint64_t> open_mask_;
  double plain_total_ = 0.0;
  double lag_total_ = 0.0;
  double residual_pen_ = 0.0;

  MaxFlow flow_;
  double cutoff_ = kUnlimited;
  bool probing_ = false;
  uint64_t dive_limit_ = 0;
  std::vector<double> lam_core_;
  std::vector<double> lam_mem_;
  std::vector<double> lam_arc_;
  int restarts_left_ = kMaxRestarts;
  bool restart_ = false;

  bool has_best_ = false;
  double best_cost_ = 0.0;
  std::vector<int> best_routes_;
  std::vector<std::vector<NodeId>> best_hosts_;

  uint64_t nodes_ = 0;
  bool stopped_ = false;
};

}  // namespace

std::string_view StatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kTimeout:
      return "timeout";
  }
  return "infeasible";
}

double SolveResult::objective() const {
  return solution ? solution->objective : std::numeric_limits<double>::quiet_NaN();
}

SolveResult Solve(const IlpModel& model, const SolverConfig& config) {
  if (config.time_limit_s < 0) throw Error(ErrorKind::kArgument, "time limit < 0");
  return BranchAndBound(model, config).Run();
}

}  // namespace nfvchain
