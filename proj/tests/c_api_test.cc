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

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

const std::string kData = NFVCHAIN_DATA_DIR;

const char* kLine = R"({
  "name": "line",
  "nodes": [1, 2, 3],
  "links": [[1, 2, 10], [2, 3, 10]],
  "dc_nodes": [], "nfv_nodes": [2], "mb_locations": {},
  "demands": [{"s": 1, "d": 3, "gbps": 1}],
  "vnfs": [{"name": "A", "cores_per_gbps": 1, "install_mem_gb": 1, "mem_per_gbps": 0.5, "assumed": false}],
  "chain": ["A"],
  "theta": 4, "upsilon_gb": null, "memory_mode": "off"
})";

class Handle {
 public:
  Handle() = default;
  ~Handle() { nfvc_scenario_free(s_); }
  nfvc_scenario** out() { return &s_; }
  const nfvc_scenario* get() const { return s_; }

 private:
  nfvc_scenario* s_ = nullptr;
};

std::string Take(char* text) {
  std::string out = text ? text : "";
  nfvc_string_free(text);
  return out;
}

TEST(CApi, VersionAndDefaults) {
  EXPECT_STRNE(nfvc_version(), "");
  nfvc_options o;
  nfvc_options_init(&o);
  EXPECT_EQ(o.strategy, nullptr);
  EXPECT_LT(o.k, 0);
  EXPECT_EQ(o.memory_mode, NFVC_MEMORY_KEEP);
}

TEST(CApi, SolveLine) {
  Handle h;
  ASSERT_EQ(nfvc_scenario_parse(kLine, 0, h.out()), NFVC_OK) << nfvc_last_error();
  nfvc_options o;
  nfvc_options_init(&o);
  o.strategy = "nfv-all";
  nfvc_result* r = nullptr;
  ASSERT_EQ(nfvc_solve(h.get(), &o, &r), NFVC_OK) << nfvc_last_error();
  EXPECT_EQ(nfvc_result_status(r), NFVC_SOLVE_OPTIMAL);
  EXPECT_DOUBLE_EQ(nfvc_result_objective(r), 2.0);
  ASSERT_EQ(nfvc_result_demand_count(r), 1u);
  int nodes[8] = {};
  ASSERT_EQ(nfvc_result_path(r, 0, nodes, 8), 3u);
  EXPECT_EQ(nodes[0], 1);
  EXPECT_EQ(nodes[2], 3);
  EXPECT_EQ(nfvc_result_path(r, 5, nodes, 8), 0u);
  char* json = nullptr;
  ASSERT_EQ(nfvc_result_json(r, &json), NFVC_OK);
  const auto doc = nlohmann::json::parse(Take(json));
  EXPECT_EQ(doc.at("status"), "optimal");
  nfvc_result_free(r);
}

TEST(CApi, InfeasibleIsNotAnError) {
  Handle h;
  ASSERT_EQ(nfvc_scenario_parse(kLine, 0, h.out()), NFVC_OK) << nfvc_last_error();
  nfvc_options o;
  nfvc_options_init(&o);
  o.strategy = "nfv-all";
  o.traffic_gbps = 5;
  nfvc_result* r = nullptr;
  ASSERT_EQ(nfvc_solve(h.get(), &o, &r), NFVC_OK) << nfvc_last_error();
  EXPECT_EQ(nfvc_result_status(r), NFVC_SOLVE_INFEASIBLE);
  EXPECT_TRUE(std::isnan(nfvc_result_objective(r)));
  int node = 0;
  EXPECT_EQ(nfvc_result_path(r, 0, &node, 1), 0u);
  nfvc_result_free(r);
}

TEST(CApi, ErrorCodes) {
  nfvc_scenario* s = nullptr;
  EXPECT_EQ(nfvc_scenario_parse("{", 0, &s), NFVC_ERR_PARSE);
  EXPECT_NE(std::string(nfvc_last_error()), "");
  EXPECT_EQ(s, nullptr);
  EXPECT_EQ(nfvc_scenario_parse(R"({"name": 3})", 0, &s), NFVC_ERR_SCHEMA);
  EXPECT_EQ(nfvc_scenario_load("/nonexistent/x.json", 0, &s), NFVC_ERR_IO);
  EXPECT_EQ(nfvc_scenario_parse(nullptr, 0, &s), NFVC_ERR_ARGUMENT);
  EXPECT_EQ(nfvc_scenario_parse(kLine, 0, nullptr), NFVC_ERR_ARGUMENT);
  EXPECT_EQ(nfvc_solve(nullptr, nullptr, nullptr), NFVC_ERR_ARGUMENT);
  EXPECT_EQ(nfvc_scenario_load((kData + "/internet2_template.json").c_str(), 0, &s),
            NFVC_ERR_VALIDATION);

  Handle h;
  ASSERT_EQ(nfvc_scenario_parse(kLine, 0, h.out()), NFVC_OK) << nfvc_last_error();
  nfvc_options o;
  nfvc_options_init(&o);
  o.strategy = "cloud";
  nfvc_result* r = nullptr;
  EXPECT_EQ(nfvc_solve(h.get(), &o, &r), NFVC_ERR_ARGUMENT);
  EXPECT_EQ(r, nullptr);
  o.strategy = "dc-only";
  ASSERT_EQ(nfvc_solve(h.get(), &o, &r), NFVC_OK) << nfvc_last_error();
  EXPECT_EQ(nfvc_result_status(r), NFVC_SOLVE_INFEASIBLE);
  nfvc_result_free(r);
  r = nullptr;
  o.strategy = "nfv-all";
  o.dc = 42;
  EXPECT_EQ(nfvc_solve(h.get(), &o, &r), NFVC_ERR_ARGUMENT);
  EXPECT_EQ(r, nullptr);
  nfvc_string_free(nullptr);
  nfvc_result_free(nullptr);
  nfvc_scenario_free(nullptr);
}

TEST(CApi, TemplatesLoadWhenAllowed) {
  Handle h;
  EXPECT_EQ(nfvc_scenario_load((kData + "/internet2_template.json").c_str(), 1, h.out()),
            NFVC_OK)
      << nfvc_last_error();
}

TEST(CApi, ScenarioJsonRoundTrip) {
  Handle a;
  ASSERT_EQ(nfvc_scenario_load((kData + "/nsfnet_sc1.json").c_str(), 0, a.out()), NFVC_OK);
  char* text = nullptr;
  ASSERT_EQ(nfvc_scenario_json(a.get(), &text), NFVC_OK);
  const std::string first = Take(text);
  Handle b;
  ASSERT_EQ(nfvc_scenario_parse(first.c_str(), 0, b.out()), NFVC_OK) << nfvc_last_error();
  ASSERT_EQ(nfvc_scenario_json(b.get(), &text), NFVC_OK);
  EXPECT_EQ(Take(text), first);
}

TEST(CApi, ExportLp) {
  Handle h;
  ASSERT_EQ(nfvc_scenario_parse(kLine, 0, h.out()), NFVC_OK) << nfvc_last_error();
  nfvc_options o;
  nfvc_options_init(&o);
  o.strategy = "nfv-all";
  char* text = nullptr;
  ASSERT_EQ(nfvc_lp_text(h.get(), &o, &text), NFVC_OK) << nfvc_last_error();
  const std::string lp = Take(text);
  EXPECT_NE(lp.find("obj: 2 r_1_3_p0"), std::string::npos);
  const auto path = std::filesystem::temp_directory_path() / "nfvc_capi_test.lp";
  ASSERT_EQ(nfvc_export_lp(h.get(), &o, path.c_str()), NFVC_OK);
  std::ifstream in(path);
  const std::string written((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(written, lp);
  std::filesystem::remove(path);
  EXPECT_EQ(nfvc_export_lp(h.get(), &o, "/nonexistent/dir/x.lp"), NFVC_ERR_IO);
}

TEST(CApi, SweepCsv) {
  Handle h;
  ASSERT_EQ(nfvc_scenario_load((kData + "/nsfnet_sc1.json").c_str(), 0, h.out()), NFVC_OK);
  nfvc_options o;
  nfvc_options_init(&o);
  o.k = 3;
  o.deterministic = 1;
  o.workers = 1;
  const double thetas[] = {192};
  const double traffic[] = {1};
  char* csv = nullptr;
  size_t timeouts = 7;
  ASSERT_EQ(nfvc_sweep_csv(h.get(), &o, "dc-only", nullptr, 0, thetas, 1, traffic, 1, &csv,
                           &timeouts),
            NFVC_OK)
      << nfvc_last_error();
  const std::string text = Take(csv);
  EXPECT_EQ(timeouts, 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 16);
  EXPECT_EQ(nfvc_sweep_csv(h.get(), &o, "dc-nfv", nullptr, 0, thetas, 1, traffic, 1, &csv,
                           nullptr),
            NFVC_ERR_ARGUMENT);
}

TEST(CApi, RandomScenarioCarriesStrategy) {
  Handle h;
  ASSERT_EQ(nfvc_scenario_random(7, h.out()), NFVC_OK);
  nfvc_result* r = nullptr;
  ASSERT_EQ(nfvc_solve(h.get(), nullptr, &r), NFVC_OK) << nfvc_last_error();
  EXPECT_NE(nfvc_result_status(r), NFVC_SOLVE_TIMEOUT);
  nfvc_result_free(r);
}

TEST(CApi, ValidateNsfnet) {
  Handle h;
  ASSERT_EQ(nfvc_scenario_load((kData + "/nsfnet_sc1.json").c_str(), 0, h.out()), NFVC_OK);
  char* json = nullptr;
  int passed = 0;
  ASSERT_EQ(nfvc_validate_json(h.get(), &json, &passed), NFVC_OK);
  EXPECT_EQ(passed, 1);
  const auto doc = nlohmann::json::parse(Take(json));
  EXPECT_TRUE(doc.contains("checks"));
}

}  // namespace
