// Copyright 2026 The bdslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * bdslab C API.
 *
 * Every fallible call returns a bds_status; on failure a message for the
 * calling thread is available from bds_last_error_message() until the next
 * failing call on that thread. Handles are opaque, owned by the caller and
 * released with the matching *_destroy function (NULL is accepted). Strings
 * returned by getters stay valid for the lifetime of their handle.
 *
 * Revenues are fractions of the total published block reward; powers are
 * fractions of total network hash power; RERs are fractions (0.84 = 84%).
 */
#ifndef BDSLAB_BDSLAB_H_
#define BDSLAB_BDSLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BDS_API __declspec(dllexport)
#else
#define BDS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bds_status {
  BDS_OK = 0,
  BDS_ERR_PARAMETER = 1,
  BDS_ERR_DEGENERATE = 2,
  BDS_ERR_INFEASIBLE_SCENARIO = 3,
  BDS_ERR_INFEASIBLE_PRICE = 4,
  BDS_ERR_CAPACITY = 5,
  BDS_ERR_INTERNAL = 99
} bds_status;

BDS_API const char* bds_version(void);
BDS_API const char* bds_status_string(bds_status status);
BDS_API const char* bds_last_error_message(void);

/* ---- scenario ---------------------------------------------------------- */

typedef struct bds_scenario bds_scenario;

typedef struct bds_scenario_params {
  double alpha;
  double beta;
  double tau;
  double participation;
  double infiltration;     /* tau * alpha */
  double betraying_power;  /* participation * tau * alpha */
  int trade_chain_holds;   /* tau * alpha < beta */
} bds_scenario_params;

BDS_API bds_status bds_scenario_create(double alpha, double beta, double tau,
                                       double participation,
                                       bds_scenario** out);
/* tau = optimal infiltration ratio for (alpha, beta). */
BDS_API bds_status bds_scenario_create_optimal(double alpha, double beta,
                                               double participation,
                                               bds_scenario** out);
BDS_API void bds_scenario_destroy(bds_scenario* scenario);
BDS_API bds_status bds_scenario_params_get(const bds_scenario* scenario,
                                           bds_scenario_params* out);
/* BDS_ERR_INFEASIBLE_SCENARIO with a message naming the inequality. */
BDS_API bds_status bds_scenario_require_trade_chain(
    const bds_scenario* scenario);

/* ---- model and pricing ------------------------------------------------- */

typedef enum bds_price_kind {
  BDS_PRICE_EQUILIBRIUM = 0,
  BDS_PRICE_ZERO = 1,
  BDS_PRICE_FIXED = 2,
  BDS_PRICE_INTERVAL_FRACTION = 3
} bds_price_kind;

typedef struct bds_price_policy {
  int kind;     /* bds_price_kind */
  double value; /* price for FIXED, fraction in [0,1] for INTERVAL_FRACTION */
} bds_price_policy;

typedef struct bds_revenue_report {
  double attacker_pool;
  double victim_own_miners;
  double bds_trade_income;
  double bds_miner_total;
  double loyal_miner_total;
  double others;
  double price;
} bds_revenue_report;

typedef struct bds_price_bounds {
  double lower;
  double upper;
  int feasible;
} bds_price_bounds;

BDS_API bds_status bds_optimal_tau(double alpha, double beta, double* out);
BDS_API bds_status bds_bwh_revenues(const bds_scenario* scenario,
                                    double* attacker, double* victim,
                                    double* others);
BDS_API bds_status bds_rer(double revenue_attack, double revenue_honest,
                           double* out);
BDS_API bds_status bds_revenue_report_compute(const bds_scenario* scenario,
                                              bds_price_policy policy,
                                              bds_revenue_report* out);
BDS_API bds_status bds_price_bounds_compute(const bds_scenario* scenario,
                                            double betraying_power,
                                            bds_price_bounds* out);
BDS_API bds_status bds_equilibrium_price(const bds_scenario* scenario,
                                         double betraying_power, double* out);

/* ---- games ------------------------------------------------------------- */

typedef enum bds_action { BDS_COOPERATE = 0, BDS_BETRAY = 1 } bds_action;
typedef enum bds_pool_action { BDS_POOL_ATTACK = 0, BDS_POOL_HONEST = 1 } bds_pool_action;

#define BDS_MAX_MINERS 12

typedef struct bds_payoff_table2 {
  double r, d, h, l;
  double r_prime, d_prime, h_prime, l_prime;
  double p, q;
} bds_payoff_table2;

typedef struct bds_nash_result bds_nash_result;

BDS_API bds_status bds_game_payoff_table_two(const bds_scenario* scenario,
                                             double p, double q,
                                             bds_price_policy policy,
                                             bds_payoff_table2* out);
BDS_API bds_status bds_game_solve_table2(const bds_payoff_table2* table,
                                         bds_nash_result** out);
/* BDS_ERR_CAPACITY when count > BDS_MAX_MINERS. */
BDS_API bds_status bds_game_solve(const bds_scenario* scenario,
                                  const double* powers, size_t count,
                                  bds_price_policy policy,
                                  bds_nash_result** out);
BDS_API size_t bds_nash_result_count(const bds_nash_result* result);
BDS_API int bds_nash_result_unique(const bds_nash_result* result);
/* "B,B"-style profile string; NULL when i is out of range. */
BDS_API const char* bds_nash_result_profile(const bds_nash_result* result,
                                            size_t i);
BDS_API void bds_nash_result_destroy(bds_nash_result* result);

/* actions must hold `count` entries. With tau = 0, count must be 0. */
BDS_API bds_status bds_game_principal_agent(const bds_scenario* scenario,
                                            const double* powers, size_t count,
                                            int* pool_action, int* actions);
BDS_API bds_status bds_ultimatum_equilibrium(const bds_scenario* scenario,
                                             double betraying_power,
                                             double* price, int* accepted);

/* ---- Monte Carlo ------------------------------------------------------- */

typedef enum bds_sim_mode { BDS_ROUND_LEVEL = 0, BDS_SHARE_LEVEL = 1 } bds_sim_mode;
typedef enum bds_sampling { BDS_SAMPLING_INDEPENDENT = 0, BDS_SAMPLING_WEYL = 1 } bds_sampling;

typedef struct bds_sim_config {
  uint64_t rounds;
  uint64_t seed;
  uint32_t replicas;
  int mode;                  /* bds_sim_mode */
  uint32_t share_difficulty; /* share level only */
  int sampling;              /* bds_sampling */
  int omit_fpow;             /* fault injection */
  uint32_t threads;          /* 0 = hardware concurrency */
} bds_sim_config;

typedef enum bds_actor {
  BDS_ACTOR_ATTACKER_POOL = 0,
  BDS_ACTOR_BDS_MINER = 1,
  BDS_ACTOR_VICTIM_POOL = 2,
  BDS_ACTOR_OTHERS = 3,
  BDS_ACTOR_LOYAL_MINERS = 4
} bds_actor;

#define BDS_ACTOR_COUNT 5

typedef struct bds_actor_estimate {
  int actor;
  const char* name;
  int defined; /* 0 when the actor holds no power */
  double honest_baseline;
  double analytic_rer;
  double mean_rer;
  double stderr_rer;
} bds_actor_estimate;

typedef struct bds_sim_tallies {
  uint64_t rounds;
  uint64_t found[5]; /* others, attacker honest, victim own, loyal, betrayer */
  uint64_t published;
  uint64_t withheld;
  uint64_t sold;
  uint64_t rejected;
  uint64_t shares_total;
  double others;
  double victim_own;
  double attacker_treasury;
  double trade_income;
  double bds_miner;
  double loyal_miners;
  double conservation_error;
  double withheld_rate_mean;
  double withheld_rate_stderr;
  double price;
  double per_sale_price;
  uint64_t seed;
  uint32_t replicas;
} bds_sim_tallies;

typedef struct bds_sim_result bds_sim_result;

BDS_API void bds_sim_config_default(bds_sim_config* cfg);
BDS_API bds_status bds_simulate(const bds_scenario* scenario,
                                const bds_sim_config* cfg,
                                bds_price_policy policy, bds_sim_result** out);
BDS_API bds_status bds_sim_result_actor(const bds_sim_result* result,
                                        int actor, bds_actor_estimate* out);
BDS_API bds_status bds_sim_result_tallies(const bds_sim_result* result,
                                          bds_sim_tallies* out);
BDS_API void bds_sim_result_destroy(bds_sim_result* result);

/* ---- sweeps ------------------------------------------------------------ */

typedef enum bds_metric {
  BDS_METRIC_ATTACKER_POOL = 0,
  BDS_METRIC_BDS_MINER = 1,
  BDS_METRIC_VICTIM = 2
} bds_metric;

typedef struct bds_grid_spec {
  double alpha_min, alpha_max, alpha_step;
  double beta_min, beta_max, beta_step;
  const double* participations; /* NULL selects {0.2, 0.5, 1.0} */
  size_t participation_count;
  int metric; /* bds_metric */
  uint32_t threads;
} bds_grid_spec;

typedef struct bds_sweep_row {
  double alpha, beta, tau, participation, value;
  double conservation_residual;
} bds_sweep_row;

typedef struct bds_skipped_cell {
  double alpha, beta, participation;
  const char* reason;
} bds_skipped_cell;

typedef struct bds_monotonicity_report {
  int bds_miner_nonincreasing;
  int attacker_pool_nonincreasing;
  double bds_miner_max_step;
  double attacker_pool_max_step;
  int bds_miner_flat;
  int attacker_pool_flat;
} bds_monotonicity_report;

typedef struct bds_sweep_result bds_sweep_result;

BDS_API void bds_grid_spec_default(bds_grid_spec* grid);
/* "attacker", "bds", "victim"; BDS_ERR_PARAMETER otherwise. */
BDS_API bds_status bds_metric_parse(const char* name, int* metric);
BDS_API bds_status bds_sweep_run(const bds_grid_spec* grid,
                                 bds_sweep_result** out);
BDS_API size_t bds_sweep_result_row_count(const bds_sweep_result* result);
BDS_API bds_status bds_sweep_result_row(const bds_sweep_result* result,
                                        size_t i, bds_sweep_row* out);
BDS_API size_t bds_sweep_result_skipped_count(const bds_sweep_result* result);
BDS_API bds_status bds_sweep_result_skipped(const bds_sweep_result* result,
                                            size_t i, bds_skipped_cell* out);
/* BDS_ERR_PARAMETER when the sweep evaluated no cell. */
BDS_API bds_status bds_sweep_result_extrema(const bds_sweep_result* result,
                                            size_t* argmax, size_t* argmin);
BDS_API const char* bds_sweep_result_csv(const bds_sweep_result* result);
BDS_API void bds_sweep_result_destroy(bds_sweep_result* result);

BDS_API bds_status bds_monotonicity(double alpha, double beta, double tau,
                                    const double* participations, size_t count,
                                    bds_monotonicity_report* out);

/* ---- published table reproduction -------------------------------------- */

typedef struct bds_table3_cell {
  size_t case_index;
  const char* case_name;
  double alpha, beta, tau, participation;
  double published_theory, published_simulated;
  double analytic;
  int analytic_pass;
  int simulated;
  double sim_mean, sim_stderr;
  int sim_within_sigma, sim_within_published;
  int pass;
} bds_table3_cell;

typedef struct bds_table3 bds_table3;

BDS_API bds_status bds_table3_reproduce(int analytic_only,
                                        const bds_sim_config* cfg,
                                        bds_table3** out);
BDS_API size_t bds_table3_cell_count(const bds_table3* table);
BDS_API bds_status bds_table3_cell_get(const bds_table3* table, size_t i,
                                       bds_table3_cell* out);
BDS_API void bds_table3_destroy(bds_table3* table);

#ifdef __cplusplus
}
#endif

#endif /* BDSLAB_BDSLAB_H_ */
