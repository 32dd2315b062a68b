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

// Command-line front end. Talks to the optimizer only through the C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nfvchain/nfvchain.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitTimeout = 3;

struct ScenarioDeleter {
  void operator()(nfvc_scenario* s) const { nfvc_scenario_free(s); }
};
struct ResultDeleter {
  void operator()(nfvc_result* r) const { nfvc_result_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { nfvc_string_free(s); }
};
using ScenarioPtr = std::unique_ptr<nfvc_scenario, ScenarioDeleter>;
using ResultPtr = std::unique_ptr<nfvc_result, ResultDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Raised after an API failure has been reported on stderr.
struct Failure {
  int code;
};

void Check(nfvc_status status, const std::string& what) {
  if (status == NFVC_OK) return;
  std::cerr << "error: " << what << ": " << nfvc_last_error() << "\n";
  throw Failure{kExitUsage};
}

struct Flags {
  std::string scenario;
  std::optional<uint64_t> seed;
  std::vector<std::string> strategies;
  std::vector<int> nfv_nodes;
  std::vector<int> dc;
  std::vector<int> x;
  std::vector<double> theta;
  std::vector<double> traffic;
  std::vector<double> upsilon;
  int k = -1;
  double timeout_s = -1.0;
  std::string memory_mode;
  std::string out;
  int workers = 0;
  bool deterministic = false;
};

const std::map<std::string, int> kMemoryModes = {
    {"off", NFVC_MEMORY_OFF},
    {"non_scaling", NFVC_MEMORY_NON_SCALING},
    {"ns", NFVC_MEMORY_NON_SCALING},
    {"scaling", NFVC_MEMORY_SCALING},
    {"s", NFVC_MEMORY_SCALING},
};

const std::vector<std::string> kStrategies = {"mb", "dc-only", "dc-nfv", "dc-nfv-all",
                                              "nfv-all"};

ScenarioPtr Load(const Flags& f, bool allow_template = false) {
  nfvc_scenario* raw = nullptr;
  if (f.scenario.empty() && f.seed) {
    Check(nfvc_scenario_random(*f.seed, &raw), "random instance");
  } else {
    Check(nfvc_scenario_load(f.scenario.c_str(), allow_template ? 1 : 0, &raw),
          "loading " + f.scenario);
  }
  return ScenarioPtr(raw);
}

nfvc_options Options(const Flags& f) {
  nfvc_options o;
  nfvc_options_init(&o);
  if (!f.strategies.empty()) o.strategy = f.strategies.front().c_str();
  if (!f.dc.empty()) o.dc = f.dc.front();
  if (!f.nfv_nodes.empty()) {
    o.nfv_nodes = f.nfv_nodes.data();
    o.nfv_node_count = f.nfv_nodes.size();
  }
  if (!f.theta.empty()) o.theta = f.theta.front();
  if (!f.traffic.empty()) o.traffic_gbps = f.traffic.front();
  if (!f.upsilon.empty()) o.upsilon_gb = f.upsilon.front();
  if (!f.memory_mode.empty()) o.memory_mode = kMemoryModes.at(f.memory_mode);
  o.k = f.k;
  o.timeout_s = f.timeout_s;
  o.workers = f.workers;
  o.deterministic = f.deterministic ? 1 : 0;
  return o;
}

void Emit(const Flags& f, const char* text) {
  if (f.out.empty()) {
    std::cout << text;
    if (*text != '\0' && text[std::char_traits<char>::length(text) - 1] != '\n') {
      std::cout << "\n";
    }
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  file << text;
  if (!file) {
    std::cerr << "error: cannot write " << f.out << "\n";
    throw Failure{kExitUsage};
  }
}

int RunSolve(const Flags& f) {
  if (f.scenario.empty() && !f.seed) {
    std::cerr << "error: --scenario or --seed is required\n";
    return kExitUsage;
  }
  ScenarioPtr s = Load(f);
  const nfvc_options o = Options(f);
  nfvc_result* raw = nullptr;
  Check(nfvc_solve(s.get(), &o, &raw), "solve");
  ResultPtr r(raw);
  char* text = nullptr;
  Check(nfvc_result_json(r.get(), &text), "result");
  StringPtr json(text);
  Emit(f, json.get());
  const double obj = nfvc_result_objective(r.get());
  switch (nfvc_result_status(r.get())) {
    case NFVC_SOLVE_OPTIMAL:
      std::cerr << "optimal objective=" << obj << "\n";
      return kExitOk;
    case NFVC_SOLVE_INFEASIBLE:
      std::cerr << "infeasible\n";
      return kExitInfeasible;
    case NFVC_SOLVE_TIMEOUT:
      std::cerr << "timeout";
      if (!std::isnan(obj)) std::cerr << " incumbent=" << obj;
      std::cerr << "\n";
      return kExitTimeout;
  }
  return kExitUsage;
}

std::string Join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

int RunSweep(const Flags& f) {
  ScenarioPtr s = Load(f);
  nfvc_options o = Options(f);
  o.strategy = nullptr;
  const std::string families = Join(f.strategies);
  char* text = nullptr;
  size_t timeouts = 0;
  Check(nfvc_sweep_csv(s.get(), &o, families.c_str(), f.x.data(), f.x.size(),
                       f.theta.data(), f.theta.size(), f.traffic.data(), f.traffic.size(),
                       &text, &timeouts),
        "sweep");
  StringPtr csv(text);
  Emit(f, csv.get());
  if (timeouts > 0) {
    std::cerr << timeouts << " solve(s) hit the time limit\n";
    return kExitTimeout;
  }
  return kExitOk;
}

int RunMemorySweep(const Flags& f) {
  ScenarioPtr s = Load(f);
  const nfvc_options o = Options(f);
  char* text = nullptr;
  size_t timeouts = 0;
  Check(nfvc_memory_sweep_csv(s.get(), &o, f.upsilon.data(), f.upsilon.size(),
                              f.traffic.data(), f.traffic.size(), &text, &timeouts),
        "memory-sweep");
  StringPtr csv(text);
  Emit(f, csv.get());
  if (timeouts > 0) {
    std::cerr << timeouts << " solve(s) hit the time limit\n";
    return kExitTimeout;
  }
  return kExitOk;
}

int RunCongestion(const Flags& f) {
  ScenarioPtr s = Load(f);
  nfvc_options o = Options(f);
  o.dc = 0;
  char* text = nullptr;
  int unknown = 0;
  Check(nfvc_congestion_json(s.get(), &o, f.traffic.data(), f.traffic.size(), f.dc.data(),
                             f.dc.size(), &text, &unknown),
        "congestion");
  StringPtr json(text);
  Emit(f, json.get());
  return unknown != 0 ? kExitTimeout : kExitOk;
}

int RunInflection(const Flags& f) {
  ScenarioPtr s = Load(f);
  nfvc_options o = Options(f);
  if (f.strategies.empty()) o.strategy = "dc-nfv-all";
  char* text = nullptr;
  int unknown = 0;
  Check(nfvc_inflection_json(s.get(), &o, f.theta.data(), f.theta.size(), &text, &unknown),
        "inflection");
  StringPtr json(text);
  Emit(f, json.get());
  return unknown != 0 ? kExitTimeout : kExitOk;
}

int RunExportLp(const Flags& f) {
  ScenarioPtr s = Load(f);
  const nfvc_options o = Options(f);
  Check(nfvc_export_lp(s.get(), &o, f.out.c_str()), "export-lp");
  return kExitOk;
}

int RunValidate(const Flags& f) {
  ScenarioPtr s = Load(f, true);
  char* text = nullptr;
  int passed = 0;
  Check(nfvc_validate_json(s.get(), &text, &passed), "validate");
  StringPtr json(text);
  Emit(f, json.get());
  std::cerr << (passed != 0 ? "scenario valid\n" : "consistency checks failed\n");
  return passed != 0 ? kExitOk : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VNF service-chain placement and routing optimizer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nfvc_version()));
  Flags f;

  auto scenario = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--scenario", f.scenario, "scenario JSON file")
                    ->check(CLI::ExistingFile);
    if (required) opt->required();
  };
  auto solver = [&](CLI::App* sub, int default_k, double default_timeout) {
    sub->add_option("--k", f.k,
                    "candidate paths per demand (default " + std::to_string(default_k) + ")")
        ->check(CLI::PositiveNumber);
    sub->add_option("--timeout-s", f.timeout_s,
                    "per-solve time limit in seconds, 0 for none (default " +
                        CLI::detail::to_string(default_timeout) + ")")
        ->check(CLI::NonNegativeNumber);
    sub->final_callback([&f, default_k, default_timeout] {
      if (f.k < 0) f.k = default_k;
      if (f.timeout_s < 0) f.timeout_s = default_timeout;
    });
  };
  auto memory = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--memory-mode", f.memory_mode, "off, non_scaling or scaling")
                    ->check(CLI::IsMember(kMemoryModes));
    if (required) opt->required();
  };
  auto strategy = [&](CLI::App* sub, bool many) {
    auto* opt = sub->add_option("--strategy", f.strategies,
                                many ? "strategies (comma list)" : "strategy")
                    ->check(CLI::IsMember(kStrategies) | CLI::Validator(
                                [](std::string& v) {
                                  return v.rfind("dc-nfv-", 0) == 0 ? "" : "bad strategy";
                                },
                                "dc-nfv-<x>"));
    if (many) {
      opt->delimiter(',')->required();
    } else {
      opt->expected(1);
    }
  };
  auto roles = [&](CLI::App* sub) {
    sub->add_option("--nfv-nodes", f.nfv_nodes, "NFV node subset")->delimiter(',');
    sub->add_option("--dc", f.dc, "DC node")->expected(1);
  };
  auto out = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--out", f.out, "output file (stdout when omitted)");
    if (required) opt->required();
  };
  auto workers = [&](CLI::App* sub) {
    sub->add_option("--workers", f.workers, "worker threads, 0 for all cores")
        ->check(CLI::NonNegativeNumber);
  };

  CLI::App* solve = app.add_subcommand("solve", "solve one instance");
  scenario(solve, false);
  solve->add_option("--seed", f.seed, "solve a seeded random small instance");
  strategy(solve, false);
  roles(solve);
  solve->add_option("--theta", f.theta, "cores per NFV node")->expected(1);
  solve->add_option("--traffic", f.traffic, "average demand in Gbps")->expected(1);
  solver(solve, 5, 0.0);
  memory(solve, false);
  solve->add_option("--upsilon", f.upsilon, "memory per NFV node in GB")->expected(1);
  out(solve, false);

  CLI::App* sweep = app.add_subcommand("sweep", "strategy sweep over theta and traffic");
  scenario(sweep, true);
  strategy(sweep, true);
  sweep->add_option("--x", f.x, "NFV subset sizes for dc-nfv")->delimiter(',');
  sweep->add_option("--nfv-nodes", f.nfv_nodes, "candidate NFV/MB nodes")->delimiter(',');
  sweep->add_option("--theta", f.theta, "theta values")->delimiter(',')->required();
  sweep->add_option("--traffic", f.traffic, "traffic values")->delimiter(',')->required();
  sweep->add_option("--upsilon", f.upsilon, "memory per NFV node in GB")->expected(1);
  memory(sweep, false);
  solver(sweep, 3, 120.0);
  workers(sweep);
  sweep->add_flag("--deterministic", f.deterministic, "write wall_ms as 0");
  out(sweep, false);

  CLI::App* congestion = app.add_subcommand("congestion", "DC-only feasibility over traffic");
  scenario(congestion, true);
  congestion->add_option("--traffic", f.traffic, "ascending traffic values")
      ->delimiter(',')
      ->required();
  congestion->add_option("--dc", f.dc, "candidate DC nodes (default all)")->delimiter(',');
  solver(congestion, 5, 0.0);
  workers(congestion);
  out(congestion, false);

  CLI::App* mem = app.add_subcommand("memory-sweep", "memory-bound sweep for dc-nfv");
  scenario(mem, true);
  mem->add_option("--upsilon", f.upsilon, "upsilon values in GB")->delimiter(',')->required();
  mem->add_option("--traffic", f.traffic, "traffic values")->delimiter(',')->required();
  memory(mem, true);
  solver(mem, 3, 120.0);
  workers(mem);
  mem->add_flag("--deterministic", f.deterministic, "write wall_ms as 0");
  out(mem, false);

  CLI::App* inflection = app.add_subcommand("inflection", "smallest theta reaching the bound");
  scenario(inflection, true);
  strategy(inflection, false);
  roles(inflection);
  inflection->add_option("--theta", f.theta, "ascending theta values")
      ->delimiter(',')
      ->required();
  inflection->add_option("--traffic", f.traffic, "average demand in Gbps")->expected(1);
  solver(inflection, 5, 0.0);
  out(inflection, false);

  CLI::App* lp = app.add_subcommand("export-lp", "write the model in LP format");
  scenario(lp, true);
  strategy(lp, false);
  roles(lp);
  lp->add_option("--theta", f.theta, "cores per NFV node")->expected(1);
  lp->add_option("--traffic", f.traffic, "average demand in Gbps")->expected(1);
  solver(lp, 5, 0.0);
  memory(lp, false);
  lp->add_option("--upsilon", f.upsilon, "memory per NFV node in GB")->expected(1);
  out(lp, true);

  CLI::App* validate = app.add_subcommand("validate", "lint a scenario");
  scenario(validate, true);
  out(validate, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) return RunSolve(f);
    if (sweep->parsed()) return RunSweep(f);
    if (congestion->parsed()) return RunCongestion(f);
    if (mem->parsed()) return RunMemorySweep(f);
    if (inflection->parsed()) return RunInflection(f);
    if (lp->parsed()) return RunExportLp(f);
    if (validate->parsed()) return RunValidate(f);
  } catch (const Failure& failure) {
    return failure.code;
  }
  return kExitUsage;
}
