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

/* C interface to the nfvchain optimizer. Every handle is opaque. Calls that
 * can fail return an nfvc_status and leave a message for nfvc_last_error()
 * on the calling thread. Strings returned through char** out-parameters are
 * heap allocated and released with nfvc_string_free(). */

#ifndef NFVCHAIN_NFVCHAIN_H_
#define NFVCHAIN_NFVCHAIN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NFVC_API __declspec(dllexport)
#else
#define NFVC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct nfvc_scenario nfvc_scenario;
typedef struct nfvc_result nfvc_result;

typedef enum nfvc_status {
  NFVC_OK = 0,
  NFVC_ERR_ARGUMENT = 1,
  NFVC_ERR_PARSE = 2,
  NFVC_ERR_SCHEMA = 3,
  NFVC_ERR_VALIDATION = 4,
  NFVC_ERR_MODEL = 5,
  NFVC_ERR_GUARD = 6,
  NFVC_ERR_IO = 7,
  NFVC_ERR_INTERNAL = 8
} nfvc_status;

typedef enum nfvc_solve_status {
  NFVC_SOLVE_OPTIMAL = 0,
  NFVC_SOLVE_INFEASIBLE = 1,
  NFVC_SOLVE_TIMEOUT = 2
} nfvc_solve_status;

typedef enum nfvc_memory_mode {
  NFVC_MEMORY_KEEP = -1,
  NFVC_MEMORY_OFF = 0,
  NFVC_MEMORY_NON_SCALING = 1,
  NFVC_MEMORY_SCALING = 2
} nfvc_memory_mode;

/* Per-call overrides applied to a copy of the scenario. Negative numbers
 * and NULL pointers keep the scenario's own values. */
typedef struct nfvc_options {
  const char* strategy;   /* mb, dc-only, dc-nfv, dc-nfv-all, nfv-all */
  int dc;                 /* DC node; 0 keeps the scenario DC set */
  const int* nfv_nodes;   /* dc-nfv subset, or sweep candidates */
  size_t nfv_node_count;
  double theta;           /* cores per NFV node; INFINITY allowed */
  double traffic_gbps;    /* average demand; <= 0 keeps the demands */
  int memory_mode;        /* nfvc_memory_mode */
  double upsilon_gb;      /* memory per NFV node */
  int k;                  /* candidate paths per demand */
  double timeout_s;       /* per solve; 0 means none */
  uint64_t node_limit;    /* per solve; 0 means none */
  int workers;            /* sweep threads; 0 means hardware concurrency */
  int deterministic;      /* zero wall times in sweep output */
} nfvc_options;

NFVC_API void nfvc_options_init(nfvc_options* options);

NFVC_API const char* nfvc_version(void);
NFVC_API const char* nfvc_last_error(void);
NFVC_API void nfvc_string_free(char* text);

NFVC_API nfvc_status nfvc_scenario_load(const char* path, int allow_template,
                                        nfvc_scenario** out);
NFVC_API nfvc_status nfvc_scenario_parse(const char* json, int allow_template,
                                         nfvc_scenario** out);
/* Seeded small instance; the strategy and K it was drawn with are stored in
 * the handle and used when options->strategy is NULL and options->k < 0. */
NFVC_API nfvc_status nfvc_scenario_random(uint64_t seed, nfvc_scenario** out);
NFVC_API void nfvc_scenario_free(nfvc_scenario* scenario);
NFVC_API nfvc_status nfvc_scenario_json(const nfvc_scenario* scenario, char** out);

NFVC_API nfvc_status nfvc_solve(const nfvc_scenario* scenario,
                                const nfvc_options* options, nfvc_result** out);
NFVC_API nfvc_solve_status nfvc_result_status(const nfvc_result* result);
/* NaN when no incumbent exists. */
NFVC_API double nfvc_result_objective(const nfvc_result* result);
NFVC_API size_t nfvc_result_demand_count(const nfvc_result* result);
/* Writes up to capacity nodes of the chosen route; returns the route's node
 * count, or 0 without an incumbent or for an out-of-range demand. */
NFVC_API size_t nfvc_result_path(const nfvc_result* result, size_t demand,
                                 int* nodes, size_t capacity);
NFVC_API nfvc_status nfvc_result_json(const nfvc_result* result, char** out);
NFVC_API void nfvc_result_free(nfvc_result* result);

NFVC_API nfvc_status nfvc_lp_text(const nfvc_scenario* scenario,
                                  const nfvc_options* options, char** out);
NFVC_API nfvc_status nfvc_export_lp(const nfvc_scenario* scenario,
                                    const nfvc_options* options, const char* path);

/* strategies is a comma list of mb, dc-only, dc-nfv, dc-nfv-<x>, dc-nfv-all
 * and nfv-all; a bare dc-nfv expands over xs. Sets *timeouts to the number
 * of rows that hit the time limit when timeouts is not NULL. */
NFVC_API nfvc_status nfvc_sweep_csv(const nfvc_scenario* scenario,
                                    const nfvc_options* options,
                                    const char* strategies, const int* xs,
                                    size_t x_count, const double* thetas,
                                    size_t theta_count, const double* traffic,
                                    size_t traffic_count, char** out,
                                    size_t* timeouts);
/* Uses options->memory_mode, which must be non-scaling or scaling. */
NFVC_API nfvc_status nfvc_memory_sweep_csv(const nfvc_scenario* scenario,
                                           const nfvc_options* options,
                                           const double* upsilons,
                                           size_t upsilon_count,
                                           const double* traffic,
                                           size_t traffic_count, char** out,
                                           size_t* timeouts);
/* Candidates default to every topology node. */
NFVC_API nfvc_status nfvc_congestion_json(const nfvc_scenario* scenario,
                                          const nfvc_options* options,
                                          const double* traffic,
                                          size_t traffic_count,
                                          const int* candidates,
                                          size_t candidate_count, char** out,
                                          int* any_unknown);
NFVC_API nfvc_status nfvc_inflection_json(const nfvc_scenario* scenario,
                                          const nfvc_options* options,
                                          const double* thetas,
                                          size_t theta_count, char** out,
                                          int* any_unknown);
/* Degrees, intake capacities and, for NSFNet scenarios, the digitization
 * checks. *passed is 0 when a check fails. */
NFVC_API nfvc_status nfvc_validate_json(const nfvc_scenario* scenario, char** out,
                                        int* passed);

#ifdef __cplusplus
}
#endif

#endif  /* NFVCHAIN_NFVCHAIN_H_ */
