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

// bdslab command-line front end. Links only the C API.
//
//   bdslab analytic      scenario revenues, price bounds and RERs
//   bdslab simulate      Monte Carlo RER estimates next to analytic values
//   bdslab repro-table3  the two-case, five-ratio betrayer RER table
//   bdslab sweep         analytic RER surface over (alpha, beta, r)
//   bdslab game ...      miner betrayal games and pricing
//
// Exit codes: 0 success, 1 validation error, 2 infeasible scenario,
// 3 capacity error, 4 reproduction mismatch.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bdslab/bdslab.h"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitMismatch = 4;

struct Failure {
  int exit_code;
  std::string message;
};

int ExitFor(bds_status st) {
  switch (st) {
    case BDS_OK: return kExitOk;
    case BDS_ERR_DEGENERATE:
    case BDS_ERR_INFEASIBLE_SCENARIO:
    case BDS_ERR_INFEASIBLE_PRICE: return kExitInfeasible;
    case BDS_ERR_CAPACITY: return kExitCapacity;
    default: return kExitValidation;
  }
}

void Check(bds_status st) {
  if (st != BDS_OK) {
    throw Failure{ExitFor(st), std::string(bds_status_string(st)) + ": " +
                                   bds_last_error_message()};
  }
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using ScenarioPtr =
    std::unique_ptr<bds_scenario, Deleter<bds_scenario, bds_scenario_destroy>>;
using SimPtr = std::unique_ptr<bds_sim_result,
                               Deleter<bds_sim_result, bds_sim_result_destroy>>;
using NashPtr = std::unique_ptr<bds_nash_result,
                                Deleter<bds_nash_result, bds_nash_result_destroy>>;
using SweepPtr = std::unique_ptr<bds_sweep_result,
                                 Deleter<bds_sweep_result, bds_sweep_result_destroy>>;
using TablePtr =
    std::unique_ptr<bds_table3, Deleter<bds_table3, bds_table3_destroy>>;

std::string Sig(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string Pct(double fraction) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", fraction * 100.0);
  return buf;
}

// ---- shared flags -------------------------------------------------------

struct OutputFlags {
  std::string format = "human";
  std::string out;
};

void AddOutputFlags(CLI::App* app, OutputFlags& f) {
  app->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"human", "csv", "json"}));
  app->add_option("--out", f.out,
                  "Write output to this file; relative paths resolve under "
                  "$BDSLAB_OUTPUT_DIR when set");
}

void Emit(const OutputFlags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::path path(f.out);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("BDSLAB_OUTPUT_DIR"); dir && *dir) {
      path = std::filesystem::path(dir) / path;
    }
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Failure{kExitValidation, "cannot open " + path.string()};
  os << text;
}

struct ScenarioFlags {
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double beta = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> tau;
  bool optimal_tau = false;
  double participation = 1.0;
};

void AddScenarioFlags(CLI::App* app, ScenarioFlags& f) {
  app->add_option("--alpha", f.alpha, "Attacking pool power")->required();
  app->add_option("--beta", f.beta, "Victim pool power")->required();
  auto* tau = app->add_option("--tau", f.tau, "Infiltration ratio");
  auto* opt = app->add_flag("--optimal-tau", f.optimal_tau,
                            "Use the revenue-maximizing infiltration ratio");
  tau->excludes(opt);
  app->add_option("--participation", f.participation,
                  "Fraction r of infiltrating power that betrays (default 1)");
}

ScenarioPtr MakeScenario(const ScenarioFlags& f) {
  bds_scenario* s = nullptr;
  if (f.optimal_tau) {
    Check(bds_scenario_create_optimal(f.alpha, f.beta, f.participation, &s));
  } else if (f.tau) {
    Check(bds_scenario_create(f.alpha, f.beta, *f.tau, f.participation, &s));
  } else {
    throw Failure{kExitValidation, "one of --tau or --optimal-tau is required"};
  }
  return ScenarioPtr(s);
}

bds_scenario_params Params(const bds_scenario* s) {
  bds_scenario_params p{};
  Check(bds_scenario_params_get(s, &p));
  return p;
}

struct PriceFlags {
  std::string policy = "equilibrium";
  std::optional<double> price;
  double fraction = 0.5;
};

void AddPriceFlags(CLI::App* app, PriceFlags& f) {
  app->add_option("--price-policy", f.policy, "Trade price policy")
      ->check(CLI::IsMember({"equilibrium", "zero", "fixed", "midpoint",
                             "fraction"}));
  app->add_option("--price", f.price, "Fixed trade price T (implies fixed)");
  app->add_option("--price-fraction", f.fraction,
                  "Position inside [lower, upper] for --price-policy fraction");
}

bds_price_policy MakePolicy(const PriceFlags& f) {
  if (f.price) return {BDS_PRICE_FIXED, *f.price};
  if (f.policy == "zero") return {BDS_PRICE_ZERO, 0.0};
  if (f.policy == "midpoint") return {BDS_PRICE_INTERVAL_FRACTION, 0.5};
  if (f.policy == "fraction") return {BDS_PRICE_INTERVAL_FRACTION, f.fraction};
  if (f.policy == "fixed") {
    throw Failure{kExitValidation, "--price-policy fixed needs --price"};
  }
  return {BDS_PRICE_EQUILIBRIUM, 0.0};
}

json ScenarioJson(const bds_scenario_params& p) {
  return {{"alpha", p.alpha},
          {"beta", p.beta},
          {"tau", p.tau},
          {"participation", p.participation},
          {"infiltration", p.infiltration},
          {"betraying_power", p.betraying_power}};
}

std::string CsvPrefix(const bds_scenario_params& p) {
  return Sig(p.alpha, 10) + ',' + Sig(p.beta, 10) + ',' + Sig(p.tau, 10) + ',' +
         Sig(p.participation, 10) + ',';
}

// ---- analytic -----------------------------------------------------------

struct AnalyticCmd {
  ScenarioFlags scenario;
  PriceFlags price;
  OutputFlags output;
};

struct ActorRer {
  const char* actor;
  double revenue;
  double honest;
};

int RunAnalytic(const AnalyticCmd& cmd) {
  const ScenarioPtr s = MakeScenario(cmd.scenario);
  const bds_scenario_params p = Params(s.get());
  if (p.betraying_power > 0.0) Check(bds_scenario_require_trade_chain(s.get()));

  bds_revenue_report rep{};
  Check(bds_revenue_report_compute(s.get(), MakePolicy(cmd.price), &rep));
  double bwh_attacker = 0, bwh_victim = 0, bwh_others = 0;
  Check(bds_bwh_revenues(s.get(), &bwh_attacker, &bwh_victim, &bwh_others));
  std::optional<bds_price_bounds> bounds;
  if (p.betraying_power > 0.0) {
    bds_price_bounds b{};
    Check(bds_price_bounds_compute(s.get(), p.betraying_power, &b));
    bounds = b;
  }

  const std::vector<ActorRer> actors = [&] {
    std::vector<ActorRer> v{
        {"attacker_pool", rep.attacker_pool, p.alpha},
        {"bds_miner", rep.bds_miner_total, p.betraying_power},
        {"victim_pool", rep.victim_own_miners, p.beta},
        {"others", rep.others, 1.0 - p.alpha - p.beta},
        {"loyal_miners", rep.loyal_miner_total, p.alpha - p.betraying_power},
    };
    std::erase_if(v, [](const ActorRer& a) { return !(a.honest > 0.0); });
    return v;
  }();
  std::vector<double> rers;
  for (const ActorRer& a : actors) {
    double r = 0;
    Check(bds_rer(a.revenue, a.honest, &r));
    rers.push_back(r);
  }

  std::ostringstream os;
  if (cmd.output.format == "csv") {
    os << "# schema: bdslab.analytic.v1\n"
       << "alpha,beta,tau,participation,actor,rer_analytic\n";
    for (std::size_t i = 0; i < actors.size(); ++i) {
      os << CsvPrefix(p) << actors[i].actor << ',' << Sig(rers[i]) << '\n';
    }
  } else if (cmd.output.format == "json") {
    json j;
    j["scenario"] = ScenarioJson(p);
    j["bwh_baseline"] = {{"attacker_pool", bwh_attacker},
                         {"victim_pool", bwh_victim},
                         {"others", bwh_others}};
    j["revenue_report"] = {{"attacker_pool", rep.attacker_pool},
                           {"victim_own_miners", rep.victim_own_miners},
                           {"bds_trade_income", rep.bds_trade_income},
                           {"bds_miner_total", rep.bds_miner_total},
                           {"loyal_miner_total", rep.loyal_miner_total},
                           {"others", rep.others},
                           {"price", rep.price}};
    if (bounds) {
      j["price_bounds"] = {{"lower", bounds->lower},
                           {"upper", bounds->upper},
                           {"feasible", bounds->feasible != 0}};
    }
    for (std::size_t i = 0; i < actors.size(); ++i) {
      j["rer"][actors[i].actor] = rers[i];
    }
    os << j.dump(2) << '\n';
  } else {
    os << "scenario: alpha=" << Sig(p.alpha) << " beta=" << Sig(p.beta)
       << " tau=" << Sig(p.tau) << " r=" << Sig(p.participation)
       << "  (tau*alpha=" << Sig(p.infiltration)
       << ", p=" << Sig(p.betraying_power) << ")\n";
    os << "BWH baseline: attacker " << Sig(bwh_attacker) << ", victim "
       << Sig(bwh_victim) << ", others " << Sig(bwh_others) << '\n';
    if (bounds) {
      os << "price bounds: [" << Sig(bounds->lower) << ", " << Sig(bounds->upper)
         << "] feasible=" << (bounds->feasible ? "yes" : "no") << '\n';
    }
    os << "trade price T: " << Sig(rep.price) << "\n\n";
    os << "revenue report\n"
       << "  attacker_pool      " << Sig(rep.attacker_pool) << '\n'
       << "  victim_own_miners  " << Sig(rep.victim_own_miners) << '\n'
       << "  bds_trade_income   " << Sig(rep.bds_trade_income) << '\n'
       << "  bds_miner_total    " << Sig(rep.bds_miner_total) << '\n'
       << "  loyal_miner_total  " << Sig(rep.loyal_miner_total) << '\n'
       << "  others             " << Sig(rep.others) << "\n\n";
    os << "RER (%)\n";
    for (std::size_t i = 0; i < actors.size(); ++i) {
      char line[96];
      std::snprintf(line, sizeof line, "  %-14s %10s\n", actors[i].actor,
                    Pct(rers[i]).c_str());
      os << line;
    }
  }
  Emit(cmd.output, os.str());
  return kExitOk;
}

// ---- simulate -----------------------------------------------------------

struct SimFlags {
  std::uint64_t rounds = 1'000'000;
  std::uint64_t seed = 1;
  std::uint32_t replicas = 8;
  bool share_level = false;
  std::uint32_t difficulty = 1;
  std::string sampling = "weyl";
  bool omit_fpow = false;
  std::uint32_t threads = 0;
};

void AddSimFlags(CLI::App* app, SimFlags& f, bool full) {
  app->add_option("--rounds", f.rounds, "fPoW discoveries per replica");
  app->add_option("--seed", f.seed, "Master RNG seed");
  app->add_option("--replicas", f.replicas, "Independent replicas");
  app->add_option("--sampling", f.sampling, "Finder sampling scheme")
      ->check(CLI::IsMember({"weyl", "independent"}));
  app->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
  if (full) {
    app->add_flag("--share-level", f.share_level,
                  "Replay individual pPoW submissions");
    app->add_option("--difficulty", f.difficulty,
                    "Expected pPoW per fPoW (share level)");
    app->add_flag("--omit-fpow", f.omit_fpow,
                  "Fault injection: betrayers withhold the fPoW from the victim");
  }
}

bds_sim_config MakeSimConfig(const SimFlags& f) {
  bds_sim_config cfg;
  bds_sim_config_default(&cfg);
  cfg.rounds = f.rounds;
  cfg.seed = f.seed;
  cfg.replicas = f.replicas;
  cfg.mode = f.share_level ? BDS_SHARE_LEVEL : BDS_ROUND_LEVEL;
  cfg.share_difficulty = f.difficulty;
  cfg.sampling = f.sampling == "independent" ? BDS_SAMPLING_INDEPENDENT
                                             : BDS_SAMPLING_WEYL;
  cfg.omit_fpow = f.omit_fpow ? 1 : 0;
  cfg.threads = f.threads;
  return cfg;
}

struct SimulateCmd {
  ScenarioFlags scenario;
  PriceFlags price;
  SimFlags sim;
  OutputFlags output;
};

int RunSimulate(const SimulateCmd& cmd) {
  const ScenarioPtr s = MakeScenario(cmd.scenario);
  const bds_scenario_params p = Params(s.get());
  const bds_sim_config cfg = MakeSimConfig(cmd.sim);
  bds_sim_result* raw = nullptr;
  Check(bds_simulate(s.get(), &cfg, MakePolicy(cmd.price), &raw));
  const SimPtr res(raw);

  std::vector<bds_actor_estimate> est;
  for (int a = 0; a < BDS_ACTOR_COUNT; ++a) {
    bds_actor_estimate e{};
    Check(bds_sim_result_actor(res.get(), a, &e));
    if (e.defined) est.push_back(e);
  }
  bds_sim_tallies t{};
  Check(bds_sim_result_tallies(res.get(), &t));

  std::ostringstream os;
  if (cmd.output.format == "csv") {
    os << "# schema: bdslab.simulate.v1\n"
       << "alpha,beta,tau,participation,actor,rer_analytic,rer_sim,stderr\n";
    for (const auto& e : est) {
      os << CsvPrefix(p) << e.name << ',' << Sig(e.analytic_rer) << ','
         << Sig(e.mean_rer) << ',' << Sig(e.stderr_rer) << '\n';
    }
  } else if (cmd.output.format == "json") {
    json j;
    j["scenario"] = ScenarioJson(p);
    j["config"] = {{"rounds", cfg.rounds},
                   {"seed", cfg.seed},
                   {"replicas", cfg.replicas},
                   {"mode", cmd.sim.share_level ? "share" : "round"},
                   {"share_difficulty", cfg.share_difficulty},
                   {"sampling", cmd.sim.sampling},
                   {"omit_fpow", cmd.sim.omit_fpow}};
    for (const auto& e : est) {
      j["actors"][e.name] = {{"rer_analytic", e.analytic_rer},
                             {"rer_sim", e.mean_rer},
                             {"stderr", e.stderr_rer},
                             {"honest_baseline", e.honest_baseline}};
    }
    j["tallies"] = {{"rounds", t.rounds},
                    {"published", t.published},
                    {"withheld", t.withheld},
                    {"sold", t.sold},
                    {"rejected", t.rejected},
                    {"shares", t.shares_total},
                    {"conservation_error", t.conservation_error},
                    {"withheld_rate", t.withheld_rate_mean},
                    {"withheld_rate_stderr", t.withheld_rate_stderr},
                    {"price", t.price},
                    {"per_sale_price", t.per_sale_price}};
    os << j.dump(2) << '\n';
  } else {
    os << "scenario: alpha=" << Sig(p.alpha) << " beta=" << Sig(p.beta)
       << " tau=" << Sig(p.tau) << " r=" << Sig(p.participation) << '\n'
       << "runs: " << t.replicas << " x " << cfg.rounds << " rounds, seed "
       << t.seed << ", " << (cmd.sim.share_level ? "share" : "round")
       << " level, " << cmd.sim.sampling << " sampling\n"
       << "published " << t.published << ", withheld " << t.withheld
       << ", sold " << t.sold << ", conservation error "
       << Sig(t.conservation_error, 3) << "\n\n";
    char line[128];
    std::snprintf(line, sizeof line, "  %-14s %12s %12s %10s\n", "actor",
                  "analytic %", "sim %", "stderr");
    os << line;
    for (const auto& e : est) {
      std::snprintf(line, sizeof line, "  %-14s %12s %12s %10s\n", e.name,
                    Pct(e.analytic_rer).c_str(), Pct(e.mean_rer).c_str(),
                    Pct(e.stderr_rer).c_str());
      os << line;
    }
  }
  Emit(cmd.output, os.str());
  return kExitOk;
}

// ---- repro-table3 -------------------------------------------------------

struct ReproCmd {
  bool analytic_only = false;
  SimFlags sim;
  OutputFlags output;
};

int RunRepro(const ReproCmd& cmd) {
  const bds_sim_config cfg = MakeSimConfig(cmd.sim);
  bds_table3* raw = nullptr;
  Check(bds_table3_reproduce(cmd.analytic_only ? 1 : 0, &cfg, &raw));
  const TablePtr table(raw);

  std::vector<bds_table3_cell> cells(bds_table3_cell_count(table.get()));
  bool all_pass = true;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Check(bds_table3_cell_get(table.get(), i, &cells[i]));
    all_pass = all_pass && cells[i].pass;
  }

  std::ostringstream os;
  if (cmd.output.format == "csv") {
    os << "# schema: bdslab.table3.v1\n"
       << "case,alpha,beta,tau,participation,actor,rer_analytic,rer_sim,"
          "stderr,published_theory,published_sim,pass\n";
    for (const auto& c : cells) {
      os << c.case_index + 1 << ',' << Sig(c.alpha, 10) << ',' << Sig(c.beta, 10)
         << ',' << Sig(c.tau, 10) << ',' << Sig(c.participation, 10)
         << ",bds_miner," << Sig(c.analytic) << ','
         << (c.simulated ? Sig(c.sim_mean) : "") << ','
         << (c.simulated ? Sig(c.sim_stderr) : "") << ','
         << Sig(c.published_theory) << ',' << Sig(c.published_simulated) << ','
         << (c.pass ? "true" : "false") << '\n';
    }
  } else if (cmd.output.format == "json") {
    json j = json::array();
    for (const auto& c : cells) {
      json cell = {{"case", c.case_index + 1},
                   {"alpha", c.alpha},
                   {"beta", c.beta},
                   {"tau", c.tau},
                   {"participation", c.participation},
                   {"rer_analytic", c.analytic},
                   {"published_theory", c.published_theory},
                   {"published_sim", c.published_simulated},
                   {"pass", c.pass != 0}};
      if (c.simulated) {
        cell["rer_sim"] = c.sim_mean;
        cell["stderr"] = c.sim_stderr;
      }
      j.push_back(cell);
    }
    os << j.dump(2) << '\n';
  } else {
    os << "Betrayer RER (%), analytic [published], simulated +/- stderr "
          "[published]\n";
    std::size_t current = static_cast<std::size_t>(-1);
    int passed = 0;
    for (const auto& c : cells) {
      if (c.case_index != current) {
        current = c.case_index;
        os << "\nCase " << current + 1 << ": " << c.case_name
           << "  tau=" << Sig(c.tau) << '\n';
      }
      char line[192];
      if (c.simulated) {
        std::snprintf(line, sizeof line,
                      "  r=%3.0f%%  %8.4f [%6.2f]  %8.4f +/- %6.4f [%6.2f]  %s\n",
                      c.participation * 100, c.analytic * 100,
                      c.published_theory * 100, c.sim_mean * 100,
                      c.sim_stderr * 100, c.published_simulated * 100,
                      c.pass ? "PASS" : "FAIL");
      } else {
        std::snprintf(line, sizeof line, "  r=%3.0f%%  %8.4f [%6.2f]  %s\n",
                      c.participation * 100, c.analytic * 100,
                      c.published_theory * 100, c.pass ? "PASS" : "FAIL");
      }
      os << line;
      passed += c.pass ? 1 : 0;
    }
    os << '\n' << passed << '/' << cells.size() << " cells pass\n";
  }
  Emit(cmd.output, os.str());
  return all_pass ? kExitOk : kExitMismatch;
}

// ---- sweep --------------------------------------------------------------

struct SweepCmd {
  std::string metric = "bds";
  std::vector<double> participations{0.2, 0.5, 1.0};
  double alpha_min = 0.01, alpha_max = 0.49, alpha_step = 0.01;
  double beta_min = 0.01, beta_max = 0.49, beta_step = 0.01;
  std::uint32_t threads = 0;
  OutputFlags output;
};

int RunSweepCmd(SweepCmd cmd) {
  bds_grid_spec grid;
  bds_grid_spec_default(&grid);
  Check(bds_metric_parse(cmd.metric.c_str(), &grid.metric));
  grid.alpha_min = cmd.alpha_min;
  grid.alpha_max = cmd.alpha_max;
  grid.alpha_step = cmd.alpha_step;
  grid.beta_min = cmd.beta_min;
  grid.beta_max = cmd.beta_max;
  grid.beta_step = cmd.beta_step;
  grid.participations = cmd.participations.data();
  grid.participation_count = cmd.participations.size();
  grid.threads = cmd.threads;
  bds_sweep_result* raw = nullptr;
  Check(bds_sweep_run(&grid, &raw));
  const SweepPtr res(raw);

  const std::size_t rows = bds_sweep_result_row_count(res.get());
  const std::size_t skipped = bds_sweep_result_skipped_count(res.get());
  std::optional<bds_sweep_row> hi, lo;
  std::size_t imax = 0, imin = 0;
  if (bds_sweep_result_extrema(res.get(), &imax, &imin) == BDS_OK) {
    bds_sweep_row r{};
    Check(bds_sweep_result_row(res.get(), imax, &r));
    hi = r;
    Check(bds_sweep_result_row(res.get(), imin, &r));
    lo = r;
  }

  std::ostringstream os;
  if (cmd.output.format == "json") {
    json j;
    j["metric"] = cmd.metric;
    j["rows"] = rows;
    j["skipped"] = skipped;
    auto cell = [](const bds_sweep_row& r) {
      return json{{"alpha", r.alpha},
                  {"beta", r.beta},
                  {"tau", r.tau},
                  {"participation", r.participation},
                  {"value", r.value}};
    };
    if (hi) j["max"] = cell(*hi);
    if (lo) j["min"] = cell(*lo);
    json data = json::array();
    for (std::size_t i = 0; i < rows; ++i) {
      bds_sweep_row r{};
      Check(bds_sweep_result_row(res.get(), i, &r));
      data.push_back({r.alpha, r.beta, r.tau, r.participation, r.value});
    }
    j["data"] = std::move(data);
    os << j.dump() << '\n';
  } else if (cmd.output.format == "human") {
    os << "metric " << cmd.metric << ": " << rows << " cells evaluated, "
       << skipped << " skipped\n";
    auto line = [&](const char* label, const bds_sweep_row& r) {
      os << "  " << label << ' ' << Pct(r.value) << "% at alpha=" << Sig(r.alpha)
         << " beta=" << Sig(r.beta) << " r=" << Sig(r.participation)
         << " tau=" << Sig(r.tau) << '\n';
    };
    if (hi) line("max", *hi);
    if (lo) line("min", *lo);
  } else {
    os << bds_sweep_result_csv(res.get());
  }
  Emit(cmd.output, os.str());
  return kExitOk;
}

// ---- game ---------------------------------------------------------------

struct GameCmd {
  ScenarioFlags scenario;
  PriceFlags price;
  std::vector<double> powers;
  std::optional<double> p, q;
  OutputFlags output;
};

std::vector<double> GamePowers(const GameCmd& cmd) {
  if (!cmd.powers.empty()) return cmd.powers;
  if (cmd.p && cmd.q) return {*cmd.p, *cmd.q};
  throw Failure{kExitValidation, "give --powers or both --p and --q"};
}

int RunGameSolve(const GameCmd& cmd) {
  const ScenarioPtr s = MakeScenario(cmd.scenario);
  const std::vector<double> powers = GamePowers(cmd);
  const bds_price_policy policy = MakePolicy(cmd.price);
  bds_nash_result* raw = nullptr;
  Check(bds_game_solve(s.get(), powers.data(), powers.size(), policy, &raw));
  const NashPtr res(raw);
  std::optional<bds_payoff_table2> table;
  if (powers.size() == 2) {
    bds_payoff_table2 t{};
    Check(bds_game_payoff_table_two(s.get(), powers[0], powers[1], policy, &t));
    table = t;
  }

  std::vector<std::string> eqs;
  for (std::size_t i = 0; i < bds_nash_result_count(res.get()); ++i) {
    eqs.emplace_back(bds_nash_result_profile(res.get(), i));
  }
  const bool unique = bds_nash_result_unique(res.get()) != 0;

  std::ostringstream os;
  if (cmd.output.format == "json") {
    json j;
    j["powers"] = powers;
    j["equilibria"] = eqs;
    j["unique"] = unique;
    if (table) {
      j["payoffs"] = {{"R", table->r},        {"D", table->d},
                      {"H", table->h},        {"L", table->l},
                      {"R'", table->r_prime}, {"D'", table->d_prime},
                      {"H'", table->h_prime}, {"L'", table->l_prime}};
    }
    os << j.dump(2) << '\n';
  } else if (cmd.output.format == "csv") {
    os << "# schema: bdslab.game.v1\nequilibrium,unique\n";
    for (const auto& e : eqs) os << '"' << e << "\"," << (unique ? 1 : 0) << '\n';
  } else {
    if (table) {
      os << "payoffs (miner 1, miner 2)\n"
         << "            C                          B\n"
         << "  C   (" << Sig(table->r) << ", " << Sig(table->r_prime) << ")   ("
         << Sig(table->d) << ", " << Sig(table->h_prime) << ")\n"
         << "  B   (" << Sig(table->h) << ", " << Sig(table->d_prime) << ")   ("
         << Sig(table->l) << ", " << Sig(table->l_prime) << ")\n\n";
    }
    os << "pure Nash equilibria (" << eqs.size() << "):\n";
    for (const auto& e : eqs) os << "  " << e << '\n';
    if (unique) os << "unique equilibrium: " << eqs.front() << '\n';
  }
  Emit(cmd.output, os.str());
  return kExitOk;
}

int RunPrincipalAgent(const GameCmd& cmd) {
  const ScenarioPtr s = MakeScenario(cmd.scenario);
  const bds_scenario_params p = Params(s.get());
  std::vector<double> powers = cmd.powers;
  if (powers.empty() && p.infiltration > 0.0) {
    powers = {p.infiltration / 2, p.infiltration / 2};
  }
  std::vector<int> actions(powers.size());
  int pool = 0;
  Check(bds_game_principal_agent(s.get(), powers.data(), powers.size(), &pool,
                                 actions.data()));
  std::string profile = pool == BDS_POOL_HONEST ? "H" : "A";
  for (int a : actions) profile += a == BDS_BETRAY ? ", B" : ", C";

  std::ostringstream os;
  if (cmd.output.format == "json") {
    os << json{{"pool_action", pool == BDS_POOL_HONEST ? "honest" : "attack"},
               {"profile", profile},
               {"powers", powers}}
              .dump(2)
       << '\n';
  } else if (cmd.output.format == "csv") {
    os << "# schema: bdslab.principal_agent.v1\nprofile\n\"" << profile << "\"\n";
  } else {
    os << "subgame-perfect profile: " << profile << '\n';
  }
  Emit(cmd.output, os.str());
  return kExitOk;
}

int RunUltimatum(const GameCmd& cmd) {
  const ScenarioPtr s = MakeScenario(cmd.scenario);
  const bds_scenario_params p = Params(s.get());
  const double power = cmd.p.value_or(p.betraying_power);
  double price = 0;
  int accepted = 0;
  Check(bds_ultimatum_equilibrium(s.get(), power, &price, &accepted));
  std::ostringstream os;
  if (cmd.output.format == "json") {
    os << json{{"betraying_power", power},
               {"price", price},
               {"response", accepted ? "accept" : "reject"}}
              .dump(2)
       << '\n';
  } else if (cmd.output.format == "csv") {
    os << "# schema: bdslab.ultimatum.v1\nbetraying_power,price,response\n"
       << Sig(power, 10) << ',' << Sig(price, 10) << ','
       << (accepted ? "accept" : "reject") << '\n';
  } else {
    os << "equilibrium: (" << Sig(price) << ", "
       << (accepted ? "Accept" : "Reject") << ") for p=" << Sig(power) << '\n';
  }
  Emit(cmd.output, os.str());
  return kExitOk;
}

// ---- config file ----------------------------------------------------------

std::string JsonScalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number()) return v.dump();
  throw Failure{kExitValidation, "unsupported config value " + v.dump()};
}

// Appends `--key value` for every config key whose flag is absent from argv,
// so flags on the command line win. Keys the selected subcommand does not
// know are skipped with a warning.
std::vector<std::string> MergeConfig(std::vector<std::string> args,
                                     const CLI::App& app) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (path.empty()) return args;

  std::ifstream is(path);
  if (!is) throw Failure{kExitValidation, "cannot read config " + path};
  json cfg;
  try {
    cfg = json::parse(is);
  } catch (const json::exception& e) {
    throw Failure{kExitValidation, std::string("bad config: ") + e.what()};
  }
  if (!cfg.is_object()) throw Failure{kExitValidation, "config must be an object"};

  const CLI::App* leaf = &app;
  for (const auto& a : args) {
    if (a.empty() || a[0] == '-') continue;
    if (const CLI::App* sub = leaf->get_subcommand_no_throw(a)) leaf = sub;
  }

  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    bool present = false;
    for (const auto& a : args) {
      present = present || a == flag || a.rfind(flag + "=", 0) == 0;
    }
    if (present) continue;
    if (leaf->get_option_no_throw(flag) == nullptr) {
      std::cerr << "warning: config key '" << key << "' not used by "
                << (leaf == &app ? std::string("bdslab") : leaf->get_name())
                << '\n';
      continue;
    }
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) joined += ',';
        joined += JsonScalar(item);
      }
      args.push_back(flag);
      args.push_back(joined);
    } else {
      args.push_back(flag);
      args.push_back(JsonScalar(value));
    }
  }
  return args;
}

int Main(int argc, char** argv) {
  CLI::App app{"bdslab: block double-submission attack economics", "bdslab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bds_version());
  app.set_help_all_flag("--help-all", "Help for every subcommand");
  app.footer(
      "--config FILE reads a JSON object whose keys mirror flag names; flags\n"
      "given on the command line take precedence.");

  AnalyticCmd analytic;
  auto* a = app.add_subcommand("analytic", "Closed-form revenues and RERs");
  AddScenarioFlags(a, analytic.scenario);
  AddPriceFlags(a, analytic.price);
  AddOutputFlags(a, analytic.output);

  SimulateCmd simulate;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo RER estimates");
  AddScenarioFlags(sim, simulate.scenario);
  AddPriceFlags(sim, simulate.price);
  AddSimFlags(sim, simulate.sim, true);
  AddOutputFlags(sim, simulate.output);

  ReproCmd repro;
  auto* rep = app.add_subcommand("repro-table3",
                                 "Reproduce the published betrayer RER table");
  rep->add_flag("--analytic-only", repro.analytic_only, "Skip the simulation");
  AddSimFlags(rep, repro.sim, false);
  AddOutputFlags(rep, repro.output);

  SweepCmd sweep;
  sweep.output.format = "csv";
  auto* sw = app.add_subcommand("sweep", "Analytic RER surface");
  sw->add_option("--metric", sweep.metric, "attacker, bds or victim");
  sw->add_option("--participations", sweep.participations)->delimiter(',');
  sw->add_option("--alpha-min", sweep.alpha_min);
  sw->add_option("--alpha-max", sweep.alpha_max);
  sw->add_option("--alpha-step", sweep.alpha_step);
  sw->add_option("--beta-min", sweep.beta_min);
  sw->add_option("--beta-max", sweep.beta_max);
  sw->add_option("--beta-step", sweep.beta_step);
  sw->add_option("--threads", sweep.threads);
  AddOutputFlags(sw, sweep.output);

  GameCmd game;
  auto* g = app.add_subcommand("game", "Miner betrayal games");
  g->require_subcommand(1);
  auto add_game = [&](const char* name, const char* help) {
    auto* c = g->add_subcommand(name, help);
    AddScenarioFlags(c, game.scenario);
    AddOutputFlags(c, game.output);
    return c;
  };
  auto* solve = add_game("solve", "Pure Nash equilibria of the N-miner game");
  AddPriceFlags(solve, game.price);
  solve->add_option("--powers", game.powers, "Miner powers, comma separated")
      ->delimiter(',');
  solve->add_option("--p", game.p, "Miner 1 power (two-miner game)");
  solve->add_option("--q", game.q, "Miner 2 power (two-miner game)");
  auto* pa = add_game("principal-agent", "Pool-versus-miners backward induction");
  pa->add_option("--powers", game.powers,
                 "Miner powers (default: two miners splitting tau*alpha)")
      ->delimiter(',');
  auto* ult = add_game("ultimatum", "Subgame-perfect block price");
  ult->add_option("--p", game.p, "Betraying power (default r*tau*alpha)");

  std::vector<std::string> args(argv + 1, argv + argc);
  args = MergeConfig(std::move(args), app);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (*a) return RunAnalytic(analytic);
  if (*sim) return RunSimulate(simulate);
  if (*rep) return RunRepro(repro);
  if (*sw) return RunSweepCmd(sweep);
  if (*solve) return RunGameSolve(game);
  if (*pa) return RunPrincipalAgent(game);
  if (*ult) return RunUltimatum(game);
  return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Main(argc, argv);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}
