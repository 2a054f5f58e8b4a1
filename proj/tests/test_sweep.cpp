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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "bdslab/error.hpp"
#include "bdslab/model.hpp"
#include "bdslab/sweep.hpp"
#include "oracles.hpp"

using namespace bdslab;

TEST_CASE("metric names") {
  for (Metric m : {Metric::kAttackerPoolRer, Metric::kBdsMinerRer, Metric::kVictimRer}) {
    CHECK(ParseMetric(MetricName(m)) == m);
  }
  CHECK_FALSE(ParseMetric("loyal").has_value());
  CHECK(MetricActor(Metric::kVictimRer) == "victim_pool");
}

TEST_CASE("grid axes") {
  GridSpec g;
  CHECK(g.alphas().size() == 49);
  CHECK(g.alphas().back() == 0.49);
  CHECK(g.betas().front() == 0.01);
  g.beta_min = 0.001;
  g.beta_max = 0.009;
  g.beta_step = 0.001;
  CHECK(g.betas().size() == 9);
  CHECK(g.betas()[6] == 0.007);
  g.alpha_step = 0;
  CHECK_THROWS_AS(g.Validate(), Error);
  g = GridSpec{};
  g.participations.clear();
  CHECK_THROWS_AS(g.Validate(), Error);
  g = GridSpec{};
  g.alpha_max = 0.5;
  CHECK_THROWS_AS(g.Validate(), Error);
}

TEST_CASE("default sweep") {
  GridSpec g;
  const SweepResult r = RunSweep(g);
  CHECK(r.rows.size() + r.skipped.size() == 49 * 49 * 3);
  CHECK(r.skipped.empty());
  for (const SweepRow& row : r.rows) {
    REQUIRE(std::abs(row.conservation_residual) < 1e-12);
    REQUIRE(row.value == doctest::Approx(oracle::BetrayerRer(row.alpha, row.beta,
                                                             row.tau, row.participation))
                             .epsilon(1e-9));
  }
  CHECK(RunSweep(g, 1).rows.size() == r.rows.size());
  CHECK(SweepCsv(RunSweep(g, 1)) == SweepCsv(r));
}

TEST_CASE("victim surface is constant in r") {
  GridSpec g;
  g.metric = Metric::kVictimRer;
  const SweepResult r = RunSweep(g);
  std::map<std::pair<double, double>, double> first;
  for (const SweepRow& row : r.rows) {
    auto [it, fresh] = first.try_emplace({row.alpha, row.beta}, row.value);
    if (!fresh) REQUIRE(std::abs(row.value - it->second) < 1e-12);
  }
}

TEST_CASE("betrayer maximum with small victims") {
  GridSpec g;
  g.participations = {0.2};
  GridSpec small = g;
  small.beta_min = 0.001;
  small.beta_max = 0.009;
  small.beta_step = 0.001;
  double best = -1;
  for (const GridSpec& spec : {small, g}) {
    const SweepResult r = RunSweep(spec);
    REQUIRE(r.argmax.has_value());
    best = std::max(best, r.rows[*r.argmax].value);
  }
  CHECK(best >= 0.99);
  CHECK(best < 1.0);
  CHECK(best == doctest::Approx(oracle::kFig4Max).epsilon(1e-9));
}

TEST_CASE("attacking pool loses under full betrayal") {
  GridSpec g;
  g.metric = Metric::kAttackerPoolRer;
  g.participations = {1.0};
  const SweepResult r = RunSweep(g);
  for (const SweepRow& row : r.rows) REQUIRE(row.value < 0);
  CHECK(r.rows[*r.argmin].value == doctest::Approx(oracle::kAttackerMinAtFull).epsilon(1e-9));
  CHECK(r.rows[*r.argmin].alpha == 0.49);
  CHECK(r.rows[*r.argmin].beta == 0.41);
}

TEST_CASE("monotonic in participation") {
  const double rs[] = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  for (auto [a, b] : {std::pair{0.18, 0.15}, std::pair{0.12, 0.18}}) {
    const MonotonicityReport m = CheckMonotonicity(a, b, OptimalTau(a, b), rs);
    CHECK(m.bds_miner_nonincreasing);
    CHECK(m.attacker_pool_nonincreasing);
    CHECK_FALSE(m.bds_miner_flat);
  }
  const MonotonicityReport tiny = CheckMonotonicity(0.18, 0.15, 1e-9, rs);
  CHECK(tiny.attacker_pool_flat);
  CHECK(tiny.bds_miner_flat);
  for (int ai = 1; ai <= 49; ++ai) {
    for (int bi = 1; bi <= 49; ++bi) {
      const double a = ai / 100.0, b = bi / 100.0;
      REQUIRE(CheckMonotonicity(a, b, OptimalTau(a, b), rs).attacker_pool_nonincreasing);
    }
  }
}

TEST_CASE("skipped cells") {
  GridSpec g;
  g.participations = {0.0, 1.0};
  const SweepResult r = RunSweep(g);
  CHECK(r.skipped.size() == 49 * 49);
  for (const SkippedCell& s : r.skipped) {
    REQUIRE(s.participation == 0.0);
    REQUIRE(s.reason == "no betraying power");
  }
}

TEST_CASE("csv layout") {
  GridSpec g;
  g.alpha_min = g.alpha_max = 0.18;
  g.beta_min = g.beta_max = 0.15;
  g.participations = {0.2};
  const std::string csv = SweepCsv(RunSweep(g));
  CHECK(csv ==
        "# schema: bdslab.sweep.v1\n"
        "alpha,beta,tau,participation,actor,rer_analytic\n"
        "0.18,0.15,0.08769337616,0.2,bds_miner,0.863025\n");
  CHECK(FormatSig(0.123456789) == "0.123457");
}
