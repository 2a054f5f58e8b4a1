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
#include <random>
#include <sstream>

#include "bdslab/error.hpp"
#include "bdslab/model.hpp"
#include "bdslab/pricing.hpp"
#include "oracles.hpp"

using namespace bdslab;

namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected bdslab::Error");
  return ErrorCode::kParameter;
}

Scenario Case1(double r = 1.0) { return Scenario::WithOptimalTau(0.18, 0.15, r); }

}  // namespace

TEST_CASE("scenario validation") {
  CHECK_NOTHROW(Scenario::Make(0.18, 0.15, 0.5, 1.0));
  CHECK(CodeOf([] { Scenario::Make(0.6, 0.15, 0.1, 1); }) == ErrorCode::kParameter);
  CHECK(CodeOf([] { Scenario::Make(0.0, 0.15, 0.1, 1); }) == ErrorCode::kParameter);
  CHECK(CodeOf([] { Scenario::Make(0.18, 0.5, 0.1, 1); }) == ErrorCode::kParameter);
  CHECK(CodeOf([] { Scenario::Make(0.18, 0.15, 1.2, 1); }) == ErrorCode::kParameter);
  CHECK(CodeOf([] { Scenario::Make(0.18, 0.15, 0.1, -0.1); }) == ErrorCode::kParameter);
  CHECK(CodeOf([] { Scenario::Make(0.18, 0.15, std::nan(""), 1); }) ==
        ErrorCode::kParameter);
  CHECK(CodeOf([] { PowerShare(1.5); }) == ErrorCode::kParameter);

  const Scenario s = Scenario::Make(0.3, 0.05, 0.5, 1.0);
  CHECK_FALSE(s.trade_chain_holds());
  try {
    s.RequireTradeChain();
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInfeasibleScenario);
    CHECK(std::string(e.what()).find("tau*alpha < beta") != std::string::npos);
  }
}

TEST_CASE("scenario accessors and transforms") {
  const Scenario s = Scenario::Make(0.2, 0.1, 0.25, 0.4);
  CHECK(s.infiltration() == doctest::Approx(0.05));
  CHECK(s.betraying_power() == doctest::Approx(0.02));
  CHECK(s.WithParticipation(1.0).betraying_power() == doctest::Approx(0.05));
  CHECK(s.WithTau(0.0).infiltration() == 0.0);
  std::ostringstream os;
  os << s;
  CHECK(os.str().find("alpha=0.2") != std::string::npos);
}

TEST_CASE("BWH attacker revenue") {
  CHECK(BwhAttackerRevenue(Scenario::Make(0.18, 0.15, 0.0, 1)) == 0.18);
  const double eps = 1e-9;
  CHECK(BwhAttackerRevenue(Scenario::Make(0.5 - eps, 0.5 - eps, 0.5, 1)) ==
        doctest::Approx(5.0 / 9.0).epsilon(1e-6));
  CHECK(BwhAttackerRevenue(Case1()) ==
        doctest::Approx(oracle::kCase1BwhAttacker).epsilon(1e-12));
}

TEST_CASE("BWH victim revenue") {
  CHECK(BwhVictimRevenue(Scenario::Make(0.3, 0.15, 0.0, 1)) == 0.15);
  CHECK(BwhVictimRevenue(Scenario::Make(0.1, 0.15, 0.0, 1)) == 0.15);
  const double v = BwhVictimRevenue(Case1());
  CHECK(v < 0.15);
  CHECK(v == doctest::Approx(oracle::kCase1BwhVictim).epsilon(1e-12));
}

TEST_CASE("BWH revenues sum to one") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 10000; ++i) {
    const auto d = oracle::RandomDraw(rng);
    const Scenario s = Scenario::Make(d.alpha, d.beta, u(rng), 1);
    const double sum = BwhAttackerRevenue(s) + BwhVictimRevenue(s) + BwhOthersRevenue(s);
    REQUIRE(std::abs(sum - 1.0) < 1e-12);
    REQUIRE(BwhAttackerRevenue(s) ==
            doctest::Approx(oracle::Attacker(d.alpha, d.beta, s.tau())).epsilon(1e-12));
  }
}

TEST_CASE("optimal tau") {
  const double t1 = OptimalTau(0.18, 0.15);
  CHECK(t1 == doctest::Approx(0.0877).epsilon(5e-4));
  CHECK(std::abs(t1 - oracle::TauByGrid(0.18, 0.15)) < 1e-4);
  CHECK(std::abs(t1 - oracle::kCase1Tau) < 1e-6);
  const double t2 = OptimalTau(0.12, 0.18);
  CHECK(t2 > 0);
  CHECK(t2 < 0.5);
  CHECK(std::abs(t2 - oracle::TauByGrid(0.12, 0.18)) < 1e-4);
  CHECK(std::abs(t2 - oracle::kCase2Tau) < 1e-6);
  for (double d : {0.01, 0.001}) CHECK(OptimalTau(0.5 - d, 0.5 - d) < 0.5);

  // Agrees with the literal closed form wherever that form is well
  // conditioned.
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    const auto d = oracle::RandomDraw(rng);
    REQUIRE(OptimalTau(d.alpha, d.beta) ==
            doctest::Approx(oracle::TauLiteral(d.alpha, d.beta)).epsilon(1e-9));
  }
}

TEST_CASE("victim revenue under trade") {
  const Scenario s = Case1();
  const double p = s.infiltration();
  CHECK(BdsVictimRevenue(s, C1UpperBound(s, p)) ==
        doctest::Approx(BwhVictimRevenue(s)).epsilon(1e-12));
  CHECK(BdsVictimRevenue(s, 0.0) == doctest::Approx(s.beta()).epsilon(1e-12));
  CHECK(VictimRevenue(s, Trade{p, 0.004}) ==
        doctest::Approx(oracle::VictimTrade(0.18, 0.15, s.tau(), p, 0.004)).epsilon(1e-13));
}

TEST_CASE("betrayer revenue") {
  for (auto [r, expected] : {std::pair{1.0, 0.8411}, std::pair{0.2, 0.8636}}) {
    const Scenario s = Case1(r);
    const double p = s.betraying_power();
    const double rev = BdsMinerRevenue(s, p, EquilibriumPrice(s, p));
    CHECK(std::abs(Rer(rev, p) - expected) < 0.0015);
  }
  const Scenario s = Case1();
  const double p = s.betraying_power();
  CHECK(BdsMinerRevenue(s, p, 0.0) < BdsMinerRevenue(s, p, 1e-6));
  CHECK(CodeOf([&] { BetrayerRevenue(s, Trade{p, 0}, 2 * p); }) == ErrorCode::kParameter);
  CHECK(CodeOf([&] { BetrayerRevenue(s, Trade{0, 0}, 0.01); }) == ErrorCode::kDegenerate);
}

TEST_CASE("loyal miner revenue") {
  const Scenario s = Case1();
  const double q = 0.01;
  const double base = (q / s.alpha()) *
                      ((1 - s.tau()) * s.alpha() / (1 - s.infiltration()) +
                       (s.beta() / (1 - s.infiltration())) *
                           (s.infiltration() / (s.beta() + s.infiltration())));
  CHECK(LoyalRevenue(s, Trade{0, 0}, q) == doctest::Approx(base).epsilon(1e-13));
  CHECK(NoTradeMemberRevenue(s, q) == doctest::Approx(base).epsilon(1e-13));
  CHECK(LoyalRevenue(Scenario::Make(0.18, 0.15, 0.0, 1), Trade{0, 0}, q) ==
        doctest::Approx(q).epsilon(1e-15));

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 10000; ++i) {
    const auto d = oracle::RandomDraw(rng);
    const Scenario sc = Scenario::WithOptimalTau(d.alpha, d.beta, 1);
    const double p = sc.infiltration() * (0.01 + 0.99 * u(rng));
    const PriceBounds b = ComputePriceBounds(sc, p);
    const double T = b.lower + u(rng) * (b.upper - b.lower);
    const double ind = d.alpha * 0.01;
    REQUIRE(LoyalRevenue(sc, Trade{p, T}, ind) < NoTradeMemberRevenue(sc, ind));
  }
}

TEST_CASE("RER") {
  CHECK(Rer(0.18, 0.18) == 0.0);
  CHECK(Rer(0.029053, 0.015785) == doctest::Approx(0.8406).epsilon(1e-4));
  CHECK(Rer(0.09, 0.10) == doctest::Approx(-0.1));
  CHECK(CodeOf([] { Rer(0.1, 0.0); }) == ErrorCode::kParameter);
}

TEST_CASE("revenue report") {
  const Scenario none = Scenario::Make(0.18, 0.15, 0.0, 0.0);
  const RevenueReport z = MakeRevenueReport(none, PricePolicy::Equilibrium());
  CHECK(z.attacker_pool == doctest::Approx(0.18).epsilon(1e-15));
  CHECK(z.victim_own_miners == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(z.others == doctest::Approx(0.67).epsilon(1e-15));
  CHECK(z.bds_miner_total == 0.0);

  const Scenario r0 = Case1(0.0);
  const RevenueReport b = MakeRevenueReport(r0, PricePolicy::Equilibrium());
  CHECK(b.attacker_pool == doctest::Approx(BwhAttackerRevenue(r0)).epsilon(1e-14));
  CHECK(b.victim_own_miners == doctest::Approx(BwhVictimRevenue(r0)).epsilon(1e-14));

  const Scenario s = Case1(1.0);
  const RevenueReport full = MakeRevenueReport(s, PricePolicy::Equilibrium());
  CHECK(full.attacker_pool < s.alpha());
  CHECK(std::abs(full.total() - 1.0) < 1e-12);
  CHECK(full.bds_trade_income == doctest::Approx(full.price));
  CHECK(full.price == doctest::Approx(oracle::kCase1C1AtFull).epsilon(1e-12));

  const Scenario bad = Scenario::Make(0.3, 0.05, 0.5, 1.0);
  CHECK(CodeOf([&] { MakeRevenueReport(bad, PricePolicy::Equilibrium()); }) ==
        ErrorCode::kInfeasibleScenario);
}
