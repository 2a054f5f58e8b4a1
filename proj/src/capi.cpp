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

#include "bdslab/bdslab.h"

#include <exception>
#include <string>
#include <vector>

#include "bdslab/error.hpp"
#include "bdslab/experiments.hpp"
#include "bdslab/game.hpp"
#include "bdslab/montecarlo.hpp"
#include "bdslab/pricing.hpp"
#include "bdslab/sweep.hpp"

struct bds_scenario {
  bdslab::Scenario value;
};

struct bds_nash_result {
  bdslab::NashResult value;
  std::vector<std::string> profiles;
};

struct bds_sim_result {
  bdslab::SimEstimate value;
};

struct bds_sweep_result {
  bdslab::SweepResult value;
  std::string csv;
};

struct bds_table3 {
  std::vector<bdslab::Table3Cell> cells;
};

namespace {

thread_local std::string g_last_error;

bds_status ToStatus(bdslab::ErrorCode code) {
  switch (code) {
    case bdslab::ErrorCode::kParameter: return BDS_ERR_PARAMETER;
    case bdslab::ErrorCode::kDegenerate: return BDS_ERR_DEGENERATE;
    case bdslab::ErrorCode::kInfeasibleScenario: return BDS_ERR_INFEASIBLE_SCENARIO;
    case bdslab::ErrorCode::kInfeasiblePrice: return BDS_ERR_INFEASIBLE_PRICE;
    case bdslab::ErrorCode::kCapacity: return BDS_ERR_CAPACITY;
  }
  return BDS_ERR_INTERNAL;
}

template <class Fn>
bds_status Guard(Fn&& fn) {
  try {
    fn();
    return BDS_OK;
  } catch (const bdslab::Error& e) {
    g_last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BDS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return BDS_ERR_INTERNAL;
  }
}

void RequireNonNull(const void* p, const char* what) {
  if (p == nullptr) {
    bdslab::Fail(bdslab::ErrorCode::kParameter,
                 std::string(what) + " must not be NULL");
  }
}

bdslab::PricePolicy ToPolicy(bds_price_policy p) {
  switch (p.kind) {
    case BDS_PRICE_EQUILIBRIUM: return bdslab::PricePolicy::Equilibrium();
    case BDS_PRICE_ZERO: return bdslab::PricePolicy::Zero();
    case BDS_PRICE_FIXED: return bdslab::PricePolicy::Fixed(p.value);
    case BDS_PRICE_INTERVAL_FRACTION:
      return bdslab::PricePolicy::IntervalFraction(p.value);
  }
  bdslab::Fail(bdslab::ErrorCode::kParameter, "unknown price policy kind");
}

bdslab::SimConfig ToConfig(const bds_sim_config& c) {
  bdslab::SimConfig cfg;
  cfg.rounds = c.rounds;
  cfg.seed = c.seed;
  cfg.replicas = c.replicas;
  if (c.mode != BDS_ROUND_LEVEL && c.mode != BDS_SHARE_LEVEL) {
    bdslab::Fail(bdslab::ErrorCode::kParameter, "unknown simulation mode");
  }
  cfg.mode = c.mode == BDS_SHARE_LEVEL ? bdslab::SimMode::kShareLevel
                                       : bdslab::SimMode::kRoundLevel;
  cfg.share_difficulty = c.share_difficulty;
  if (c.sampling != BDS_SAMPLING_INDEPENDENT && c.sampling != BDS_SAMPLING_WEYL) {
    bdslab::Fail(bdslab::ErrorCode::kParameter, "unknown sampling scheme");
  }
  cfg.sampling = c.sampling == BDS_SAMPLING_WEYL ? bdslab::Sampling::kWeyl
                                                 : bdslab::Sampling::kIndependent;
  cfg.omit_fpow = c.omit_fpow != 0;
  cfg.threads = c.threads;
  cfg.Validate();
  return cfg;
}

std::span<const double> Powers(const double* powers, size_t count) {
  if (count > 0) RequireNonNull(powers, "powers");
  return {powers, count};
}

bds_nash_result* WrapNash(bdslab::NashResult r) {
  auto* out = new bds_nash_result{std::move(r), {}};
  for (const auto& eq : out->value.equilibria) {
    out->profiles.push_back(eq.ToString());
  }
  return out;
}

}  // namespace

extern "C" {

const char* bds_version(void) { return "1.0.0"; }

const char* bds_status_string(bds_status status) {
  switch (status) {
    case BDS_OK: return "ok";
    case BDS_ERR_PARAMETER: return "parameter error";
    case BDS_ERR_DEGENERATE: return "degenerate input";
    case BDS_ERR_INFEASIBLE_SCENARIO: return "infeasible scenario";
    case BDS_ERR_INFEASIBLE_PRICE: return "infeasible price";
    case BDS_ERR_CAPACITY: return "capacity exceeded";
    case BDS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* bds_last_error_message(void) { return g_last_error.c_str(); }

bds_status bds_scenario_create(double alpha, double beta, double tau,
                               double participation, bds_scenario** out) {
  return Guard([&] {
    RequireNonNull(out, "out");
    *out = new bds_scenario{
        bdslab::Scenario::Make(alpha, beta, tau, participation)};
  });
}

bds_status bds_scenario_create_optimal(double alpha, double beta,
                                       double participation,
                                       bds_scenario** out) {
  return Guard([&] {
    RequireNonNull(out, "out");
    *out = new bds_scenario{
        bdslab::Scenario::WithOptimalTau(alpha, beta, participation)};
  });
}

void bds_scenario_destroy(bds_scenario* scenario) { delete scenario; }

bds_status bds_scenario_params_get(const bds_scenario* scenario,
                                   bds_scenario_params* out) {
  return Guard([&] {
    RequireNonNull(scenario, "scenario");
    RequireNonNull(out, "out");
    const bdslab::Scenario& s = scenario->value;
    *out = {s.alpha(),        s.beta(),           s.tau(),
            s.participation(), s.infiltration(),  s.betraying_power(),
            s.trade_chain_holds() ? 1 : 0};
  });
}

bds_status bds_scenario_require_trade_chain(const bds_scenario* scenario) {
  return Guard([&] {
    RequireNonNull(scenario, "scenario");
    scenario->value.RequireTradeChain();
  });
}

bds_status bds_optimal_tau(double alpha, double beta, double* out) {
  return Guard([&] {
    RequireNonNull(out, "out");
    *out = bdslab::OptimalTau(alpha, beta);
  });
}

bds_status bds_bwh_revenues(const bds_scenario* scenario, double* attacker,
                            double* victim, double* others) {
  return Guard([&] {
    RequireNonNull(scenario, "scenario");
    if (attacker) *attacker = bdslab::BwhAttackerRevenue(scenario->value);
    if (victim) *victim = bdslab::BwhVictimRevenue(scenario->value);
    if (others) *others = bdslab::BwhOthersRevenue(scenario->value);
  });
}

bds_status bds_rer(double revenue_attack, double revenue_honest, double* out) {
  return Guard([&] {
    RequireNonNull(out, "out");
    *out = bdslab::Rer(revenue_attack, revenue_honest);
  });
}

bds_status bds_revenue_report_compute(const bds_scenario* scenario,
                                      bds_price_policy policy,
                                      bds_revenue_report* out) {
  return Guard([&] {
    RequireNonNull(scenario, "scenario");
    RequireNonNull(out, "out");
    const bdslab::RevenueReport r =
        bdslab::MakeRevenueReport(scenario->value, ToPolicy(policy));
    *out = {r.attacker_pool,   r.victim_own_miners, r.bds_trade_income,
            r.bds_miner_total, r.loyal_miner_total, r.others,
            r.price};
  });
}

bds_status bds_price_bounds_compute(const bds_scenario* scenario,
                                    double betraying_power,
                                    bds_price_bounds* out) {
  return Guard([&] {
    RequireNonNull(scenario, "scenario");
    RequireNonNull(out, "out");
    const bdslab::PriceBounds b =
        bdslab::ComputePriceBounds(scenario->value, betraying_power);
    *out = {b.lower, b.upper, b.feasible ? 1 : 0};
  });
}

bds_status bds_equilibrium_price(const bds_scenario* scenario,
                                 double betraying_power, double* out) {
  return Guard([&] {
    RequireNonNull(scenario, "scenario");
    RequireNonNull(out, "out");
    *out = bdslab::EquilibriumPrice(scenario->value, betraying_power);
  });
}

bds_status bds_game_payoff_table_two(const bds_scenario* scenario, double p,
                                     double q, bds_price_policy policy,
                                     bds_payoff_table2* out) {
  return Guard([&] {
    RequireNonNull(scenario, "scenario");
    RequireNonNull(out, "out");
    const bdslab::PayoffTable2 t =
        bdslab::PayoffTableTwo(scenario->value, p, q, ToPolicy(policy));
    *out = {t.r,       t.d,       t.h,       t.l, t.r_prime,
            t.d_prime, t.h_prime, t.l_prime, t.p, t.q};
  });
}

bds_status bds_game_solve_table2(const bds_payoff_table2* table,
                                 bds_nash_result** out) {
  return Guard([&] {
    RequireNonNull(table, "table");
    RequireNonNull(out, "out");
    bdslab::PayoffTable2 t;
    t.r = table->r;
    t.d = table->d;
    t.h = table->h;
    t.l = table->l;
    t.r_prime = table->r_prime;
    t.d_prime = table->d_prime;
    t.h_prime = table->h_prime;
    t.l_prime = table->l_prime;
    t.p = table->p;
    t.q = table->q;
    *out = WrapNash(bdslab::PureNash(t));
  });
}

bds_status bds_game_solve(const bds_scenario* scenario, const double* powers,
                          size_t count, bds_price_policy policy,
                          bds_nash_result** out) {
  return Guard([&] {
    RequireNonNull(scenario, "scenario");
    RequireNonNull(out, "out");
    *out = WrapNash(bdslab::NMinerGame(scenario->value, Powers(powers, count),
                                       ToPolicy(policy)));
  });
}

size_t bds_nash_result_count(const bds_nash_result* result) {
  return result ? result->profiles.size() : 0;
}

int bds_nash_result_unique(const bds_nash_result* result) {
  return result && result->value.unique ? 1 : 0;
}

const char* bds_nash_result_profile(const bds_nash_result* result, size_t i) {
  if (!result || i >= result->profiles.size()) return nullptr;
  return result->profiles[i].c_str();
}

void bds_nash_result_destroy(bds_nash_result* result) { delete result; }

bds_status bds_game_principal_agent(const bds_scenario* scenario,
                                    const double* powers, size_t count,
                                    int* pool_action, int* actions) {
  return Guard([&] {
    RequireNonNull(scenario, "scenario");
    RequireNonNull(pool_action, "pool_action");
    if (count > 0) RequireNonNull(actions, "actions");
    const bdslab::StrategyProfile profile =
        bdslab::PrincipalAgent(scenario->value, Powers(powers, count));
    *pool_action = profile.pool_action == bdslab::PoolAction::kAttack
                       ? BDS_POOL_ATTACK
                       : BDS_POOL_HONEST;
    for (size_t i = 0; i < profile.actions.size(); ++i) {
      actions[i] = profile.actions[i] == bdslab::MinerAction::kBetray
                       ? BDS_BETRAY
                       : BDS_COOPERATE;
    }
  });
}

bds_status bds_ultimatum_equilibrium(const bds_scenario* scenario,
                                     double betraying_power, double* price,
                                     int* accepted) {
  return Guard([&] {
    RequireNonNull(scenario, "scenario");
    const bdslab::UltimatumOutcome o =
        bdslab::UltimatumEquilibrium(scenario->value, betraying_power);
    if (price) *price = o.price;
    if (accepted) *accepted = o.response == bdslab::Response::kAccept ? 1 : 0;
  });
}

void bds_sim_config_default(bds_sim_config* cfg) {
  if (!cfg) return;
  const bdslab::SimConfig d;
  *cfg = {d.rounds,
          d.seed,
          d.replicas,
          BDS_ROUND_LEVEL,
          d.share_difficulty,
          d.sampling == bdslab::Sampling::kWeyl ? BDS_SAMPLING_WEYL
                                                : BDS_SAMPLING_INDEPENDENT,
          0,
          d.threads};
}

bds_status bds_simulate(const bds_scenario* scenario, const bds_sim_config* cfg,
                        bds_price_policy policy, bds_sim_result** out) {
  return Guard([&] {
    RequireNonNull(scenario, "scenario");
    RequireNonNull(cfg, "cfg");
    RequireNonNull(out, "out");
    *out = new bds_sim_result{
        bdslab::Simulate(scenario->value, ToConfig(*cfg), ToPolicy(policy))};
  });
}

bds_status bds_sim_result_actor(const bds_sim_result* result, int actor,
                                bds_actor_estimate* out) {
  return Guard([&] {
    RequireNonNull(result, "result");
    RequireNonNull(out, "out");
    if (actor < 0 || actor >= BDS_ACTOR_COUNT) {
      bdslab::Fail(bdslab::ErrorCode::kParameter, "actor out of range");
    }
    const bdslab::ActorEstimate& e =
        result->value.actor(static_cast<bdslab::Actor>(actor));
    *out = {actor,
            bdslab::ActorName(e.actor).data(),
            e.defined ? 1 : 0,
            e.honest_baseline,
            e.analytic_rer,
            e.mean_rer,
            e.stderr_rer};
  });
}

bds_status bds_sim_result_tallies(const bds_sim_result* result,
                                  bds_sim_tallies* out) {
  return Guard([&] {
    RequireNonNull(result, "result");
    RequireNonNull(out, "out");
    const bdslab::SimEstimate& est = result->value;
    const bdslab::SimTallies& t = est.tallies;
    bds_sim_tallies o{};
    o.rounds = t.rounds;
    for (size_t k = 0; k < bdslab::kFinderCount; ++k) o.found[k] = t.found[k];
    o.published = t.published;
    o.withheld = t.withheld;
    o.sold = t.sold;
    o.rejected = t.rejected;
    o.shares_total = t.shares_total;
    o.others = t.others;
    o.victim_own = t.victim_own;
    o.attacker_treasury = t.attacker_treasury;
    o.trade_income = t.trade_income;
    o.bds_miner = t.bds_miner;
    o.loyal_miners = t.loyal_miners;
    o.conservation_error = t.conservation_error();
    o.withheld_rate_mean = est.withheld_rate_mean;
    o.withheld_rate_stderr = est.withheld_rate_stderr;
    o.price = est.price;
    o.per_sale_price = est.per_sale_price;
    o.seed = est.seed;
    o.replicas = est.replicas;
    *out = o;
  });
}

void bds_sim_result_destroy(bds_sim_result* result) { delete result; }

void bds_grid_spec_default(bds_grid_spec* grid) {
  if (!grid) return;
  const bdslab::GridSpec d;
  *grid = {d.alpha_min, d.alpha_max, d.alpha_step, d.beta_min, d.beta_max,
           d.beta_step, nullptr,     0,            BDS_METRIC_BDS_MINER, 0};
}

bds_status bds_metric_parse(const char* name, int* metric) {
  return Guard([&] {
    RequireNonNull(name, "name");
    RequireNonNull(metric, "metric");
    const auto m = bdslab::ParseMetric(name);
    if (!m) {
      bdslab::Fail(bdslab::ErrorCode::kParameter,
                   std::string("unknown metric '") + name +
                       "' (expected attacker, bds or victim)");
    }
    *metric = static_cast<int>(*m);
  });
}

bds_status bds_sweep_run(const bds_grid_spec* grid, bds_sweep_result** out) {
  return Guard([&] {
    RequireNonNull(grid, "grid");
    RequireNonNull(out, "out");
    bdslab::GridSpec g;
    g.alpha_min = grid->alpha_min;
    g.alpha_max = grid->alpha_max;
    g.alpha_step = grid->alpha_step;
    g.beta_min = grid->beta_min;
    g.beta_max = grid->beta_max;
    g.beta_step = grid->beta_step;
    if (grid->participations != nullptr) {
      g.participations.assign(grid->participations,
                              grid->participations + grid->participation_count);
    }
    if (grid->metric < BDS_METRIC_ATTACKER_POOL || grid->metric > BDS_METRIC_VICTIM) {
      bdslab::Fail(bdslab::ErrorCode::kParameter, "unknown metric");
    }
    g.metric = static_cast<bdslab::Metric>(grid->metric);
    auto* r = new bds_sweep_result{bdslab::RunSweep(g, grid->threads), {}};
    r->csv = bdslab::SweepCsv(r->value);
    *out = r;
  });
}

size_t bds_sweep_result_row_count(const bds_sweep_result* result) {
  return result ? result->value.rows.size() : 0;
}

bds_status bds_sweep_result_row(const bds_sweep_result* result, size_t i,
                                bds_sweep_row* out) {
  return Guard([&] {
    RequireNonNull(result, "result");
    RequireNonNull(out, "out");
    if (i >= result->value.rows.size()) {
      bdslab::Fail(bdslab::ErrorCode::kParameter, "row index out of range");
    }
    const bdslab::SweepRow& r = result->value.rows[i];
    *out = {r.alpha, r.beta, r.tau, r.participation, r.value,
            r.conservation_residual};
  });
}

size_t bds_sweep_result_skipped_count(const bds_sweep_result* result) {
  return result ? result->value.skipped.size() : 0;
}

bds_status bds_sweep_result_skipped(const bds_sweep_result* result, size_t i,
                                    bds_skipped_cell* out) {
  return Guard([&] {
    RequireNonNull(result, "result");
    RequireNonNull(out, "out");
    if (i >= result->value.skipped.size()) {
      bdslab::Fail(bdslab::ErrorCode::kParameter, "skip index out of range");
    }
    const bdslab::SkippedCell& c = result->value.skipped[i];
    *out = {c.alpha, c.beta, c.participation, c.reason.c_str()};
  });
}

bds_status bds_sweep_result_extrema(const bds_sweep_result* result,
                                    size_t* argmax, size_t* argmin) {
  return Guard([&] {
    RequireNonNull(result, "result");
    if (!result->value.argmax) {
      bdslab::Fail(bdslab::ErrorCode::kParameter, "sweep evaluated no cell");
    }
    if (argmax) *argmax = *result->value.argmax;
    if (argmin) *argmin = *result->value.argmin;
  });
}

const char* bds_sweep_result_csv(const bds_sweep_result* result) {
  return result ? result->csv.c_str() : nullptr;
}

void bds_sweep_result_destroy(bds_sweep_result* result) { delete result; }

bds_status bds_monotonicity(double alpha, double beta, double tau,
                            const double* participations, size_t count,
                            bds_monotonicity_report* out) {
  return Guard([&] {
    RequireNonNull(out, "out");
    const bdslab::MonotonicityReport r = bdslab::CheckMonotonicity(
        alpha, beta, tau, Powers(participations, count));
    *out = {r.bds_miner_nonincreasing ? 1 : 0,
            r.attacker_pool_nonincreasing ? 1 : 0,
            r.bds_miner_max_step,
            r.attacker_pool_max_step,
            r.bds_miner_flat ? 1 : 0,
            r.attacker_pool_flat ? 1 : 0};
  });
}

bds_status bds_table3_reproduce(int analytic_only, const bds_sim_config* cfg,
                                bds_table3** out) {
  return Guard([&] {
    RequireNonNull(out, "out");
    bdslab::Table3Options options;
    options.analytic_only = analytic_only != 0;
    if (cfg != nullptr) options.sim = ToConfig(*cfg);
    *out = new bds_table3{bdslab::ReproduceTable3(options)};
  });
}

size_t bds_table3_cell_count(const bds_table3* table) {
  return table ? table->cells.size() : 0;
}

bds_status bds_table3_cell_get(const bds_table3* table, size_t i,
                               bds_table3_cell* out) {
  return Guard([&] {
    RequireNonNull(table, "table");
    RequireNonNull(out, "out");
    if (i >= table->cells.size()) {
      bdslab::Fail(bdslab::ErrorCode::kParameter, "cell index out of range");
    }
    const bdslab::Table3Cell& c = table->cells[i];
    const bdslab::AttackCase& ac = bdslab::kTable3Cases[c.case_index];
    *out = {c.case_index,
            ac.name.data(),
            ac.alpha,
            ac.beta,
            c.tau,
            c.participation,
            c.published_theory,
            c.published_simulated,
            c.analytic,
            c.analytic_pass ? 1 : 0,
            c.simulated ? 1 : 0,
            c.sim_mean,
            c.sim_stderr,
            c.sim_within_sigma ? 1 : 0,
            c.sim_within_published ? 1 : 0,
            c.pass() ? 1 : 0};
  });
}

void bds_table3_destroy(bds_table3* table) { delete table; }

}  // extern "C"
