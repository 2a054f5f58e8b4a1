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

#include "bdslab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bdslab/error.hpp"
#include "parallel.hpp"

namespace bdslab {
namespace {

std::vector<double> Axis(double lo, double hi, double step) {
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = std::round((lo + static_cast<double>(k) * step) * 1e12) / 1e12;
  }
  return out;
}

void RequireAxis(double lo, double hi, double step, const char* name) {
  if (!(lo > 0.0 && lo <= hi && hi < 0.5 && step > 0.0)) {
    std::ostringstream msg;
    msg << name << " axis needs 0 < min <= max < 0.5 and step > 0";
    Fail(ErrorCode::kParameter, msg.str());
  }
}

}  // namespace

std::string_view MetricName(Metric m) {
  switch (m) {
    case Metric::kAttackerPoolRer: return "attacker";
    case Metric::kBdsMinerRer: return "bds";
    case Metric::kVictimRer: return "victim";
  }
  return "unknown";
}

std::optional<Metric> ParseMetric(std::string_view name) {
  if (name == "attacker" || name == "attacker_pool") return Metric::kAttackerPoolRer;
  if (name == "bds" || name == "bds_miner") return Metric::kBdsMinerRer;
  if (name == "victim" || name == "victim_pool") return Metric::kVictimRer;
  return std::nullopt;
}

std::string_view MetricActor(Metric m) {
  switch (m) {
    case Metric::kAttackerPoolRer: return "attacker_pool";
    case Metric::kBdsMinerRer: return "bds_miner";
    case Metric::kVictimRer: return "victim_pool";
  }
  return "unknown";
}

void GridSpec::Validate() const {
  RequireAxis(alpha_min, alpha_max, alpha_step, "alpha");
  RequireAxis(beta_min, beta_max, beta_step, "beta");
  if (participations.empty()) {
    Fail(ErrorCode::kParameter, "empty grid: no participation ratios");
  }
  for (double r : participations) {
    if (!(r >= 0.0 && r <= 1.0)) {
      Fail(ErrorCode::kParameter, "participation must lie in [0, 1]");
    }
  }
}

std::vector<double> GridSpec::alphas() const {
  return Axis(alpha_min, alpha_max, alpha_step);
}

std::vector<double> GridSpec::betas() const {
  return Axis(beta_min, beta_max, beta_step);
}

double MetricValue(const Scenario& s, Metric m) {
  const RevenueReport r = MakeRevenueReport(s, PricePolicy::Equilibrium());
  switch (m) {
    case Metric::kAttackerPoolRer: return Rer(r.attacker_pool, s.alpha());
    case Metric::kBdsMinerRer: return Rer(r.bds_miner_total, s.betraying_power());
    case Metric::kVictimRer: return Rer(r.victim_own_miners, s.beta());
  }
  return 0.0;
}

SweepResult RunSweep(const GridSpec& grid, unsigned threads) {
  grid.Validate();
  const std::vector<double> alphas = grid.alphas();
  const std::vector<double> betas = grid.betas();

  struct Cell {
    std::vector<SweepRow> rows;
    std::vector<SkippedCell> skipped;
  };
  std::vector<Cell> cells(alphas.size() * betas.size());

  internal::ParallelFor(cells.size(), threads, [&](std::size_t idx) {
    const double a = alphas[idx / betas.size()];
    const double b = betas[idx % betas.size()];
    Cell& cell = cells[idx];
    const double tau = OptimalTau(a, b);
    for (double r : grid.participations) {
      const Scenario s = Scenario::Make(a, b, tau, r);
      if (!s.trade_chain_holds()) {
        cell.skipped.push_back({a, b, r, "tau*alpha >= beta"});
        continue;
      }
      if (grid.metric == Metric::kBdsMinerRer && !(s.betraying_power() > 0.0)) {
        cell.skipped.push_back({a, b, r, "no betraying power"});
        continue;
      }
      const RevenueReport report =
          MakeRevenueReport(s, PricePolicy::Equilibrium());
      cell.rows.push_back(
          {a, b, tau, r, MetricValue(s, grid.metric), report.total() - 1.0});
    }
  });

  SweepResult result;
  result.metric = grid.metric;
  for (Cell& cell : cells) {
    result.rows.insert(result.rows.end(), cell.rows.begin(), cell.rows.end());
    for (SkippedCell& sk : cell.skipped) result.skipped.push_back(std::move(sk));
  }
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const double v = result.rows[i].value;
    if (!result.argmax || v > result.rows[*result.argmax].value) result.argmax = i;
    if (!result.argmin || v < result.rows[*result.argmin].value) result.argmin = i;
  }
  return result;
}

std::string FormatSig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string SweepCsv(const SweepResult& result) {
  std::string out = "# schema: bdslab.sweep.v1\n";
  out += "alpha,beta,tau,participation,actor,rer_analytic\n";
  const std::string actor(MetricActor(result.metric));
  for (const SweepRow& row : result.rows) {
    out += FormatSig(row.alpha, 10) + ',' + FormatSig(row.beta, 10) + ',' +
           FormatSig(row.tau, 10) + ',' + FormatSig(row.participation, 10) +
           ',' + actor + ',' + FormatSig(row.value) + '\n';
  }
  return out;
}

MonotonicityReport CheckMonotonicity(double alpha, double beta, double tau,
                                     std::span<const double> participations) {
  std::vector<double> rs(participations.begin(), participations.end());
  std::sort(rs.begin(), rs.end());

  std::vector<double> miner;
  std::vector<double> pool;
  for (double r : rs) {
    const Scenario s = Scenario::Make(alpha, beta, tau, r);
    pool.push_back(MetricValue(s, Metric::kAttackerPoolRer));
    if (s.betraying_power() > 0.0) {
      miner.push_back(MetricValue(s, Metric::kBdsMinerRer));
    }
  }

  auto scan = [](const std::vector<double>& v, bool& nonincreasing,
                 double& max_step) {
    nonincreasing = true;
    max_step = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      const double step = v[i] - v[i - 1];
      max_step = std::max(max_step, std::abs(step));
      if (step > 1e-15) nonincreasing = false;
    }
  };

  MonotonicityReport rep;
  scan(miner, rep.bds_miner_nonincreasing, rep.bds_miner_max_step);
  scan(pool, rep.attacker_pool_nonincreasing, rep.attacker_pool_max_step);
  rep.bds_miner_flat = rep.bds_miner_max_step < kFlatThreshold;
  rep.attacker_pool_flat = rep.attacker_pool_max_step < kFlatThreshold;
  return rep;
}

}  // namespace bdslab
