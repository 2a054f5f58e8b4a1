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
#include <vector>

#include "bdslab/error.hpp"
#include "bdslab/game.hpp"
#include "bdslab/pricing.hpp"
#include "oracles.hpp"

using namespace bdslab;

namespace {

template <class Fn>
ErrorCode CodeOf(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected bdslab::Error");
  return ErrorCode::kParameter;
}

Scenario Case1() { return Scenario::WithOptimalTau(0.18, 0.15, 1.0); }

// Random split of `total` into n positive parts.
std::vector<double> Split(std::mt19937_64& rng, double total, std::size_t n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(n);
  double sum = 0;
  for (double& x : w) sum += (x = u(rng));
  for (double& x : w) x *= total / sum;
  return w;
}

}  // namespace

TEST_CASE("profile strings") {
  CHECK(ProfileFromMask(0b11, 2).ToString() == "B,B");
  CHECK(ProfileFromMask(0b01, 2).ToString() == "B,C");
  StrategyProfile p = ProfileFromMask(0b11, 2);
  p.pool_action = PoolAction::kHonest;
  CHECK(p.ToString() == "H,B,B");
  CHECK(p.AllBetray());
  CHECK_FALSE(ProfileFromMask(0b10, 2).AllBetray());
}

TEST_CASE("two-miner payoff table") {
  const Scenario s = Case1();
  const double half = s.infiltration() / 2;
  const PayoffTable2 t = PayoffTableTwo(s, half, half, PricePolicy::Equilibrium());
  CHECK(t.r == doctest::Approx(t.r_prime).epsilon(1e-14));
  CHECK(t.h == doctest::Approx(t.h_prime).epsilon(1e-14));
  CHECK(t.d == doctest::Approx(t.d_prime).epsilon(1e-14));
  CHECK(t.l == doctest::Approx(t.l_prime).epsilon(1e-14));
  CHECK(t.h > t.r);
  CHECK(t.r > t.d);
  CHECK(t.l > t.r);

  const std::vector<double> powers{half, half};
  for (std::uint32_t m : {0u, 1u, 2u, 3u}) {
    const double want0 = oracle::MinerPayoff(s.alpha(), s.beta(), s.tau(), powers, m, 0);
    const double got0 = m == 0 ? t.r : m == 1 ? t.h : m == 2 ? t.d : t.l;
    CHECK(got0 == doctest::Approx(want0).epsilon(1e-10));
  }
  CHECK(CodeOf([] {
          PayoffTableTwo(Scenario::Make(0.18, 0.15, 0, 1), 0.01, 0.01,
                         PricePolicy::Equilibrium());
        }) == ErrorCode::kDegenerate);
  CHECK(CodeOf([&] {
          PayoffTableTwo(s, 0.01, 0.01, PricePolicy::Equilibrium());
        }) == ErrorCode::kParameter);
}

TEST_CASE("two-miner Nash") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int i = 0; i < 1000; ++i) {
    const auto d = oracle::RandomDraw(rng);
    const Scenario s = Scenario::WithOptimalTau(d.alpha, d.beta, 1);
    const double total = s.infiltration() * u(rng);
    const double p = total * u(rng);
    const NashResult res = PureNash(PayoffTableTwo(s, p, total - p, PricePolicy::Equilibrium()));
    REQUIRE(res.unique);
    REQUIRE(res.equilibria.front().ToString() == "B,B");
  }
  PayoffTable2 counter{};
  counter.r = counter.r_prime = 1.0;
  counter.h = counter.h_prime = 0.5;
  counter.d = counter.d_prime = 0.2;
  counter.l = counter.l_prime = 0.4;
  const NashResult cc = PureNash(counter);
  bool has_cc = false;
  for (const auto& e : cc.equilibria) has_cc = has_cc || e.ToString() == "C,C";
  CHECK(has_cc);
}

TEST_CASE("N-miner game matches brute force") {
  std::mt19937_64 rng(43);
  const Scenario s = Case1();
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u}) {
    const std::vector<double> powers = Split(rng, s.infiltration(), n);
    const BinaryGame g = MinerBetrayalGame(s, powers, PricePolicy::Equilibrium());
    for (std::uint32_t m = 0; m < g.profiles(); ++m) {
      for (std::size_t i = 0; i < n; ++i) {
        REQUIRE(g.payoff(m, i) ==
                doctest::Approx(oracle::MinerPayoff(s.alpha(), s.beta(), s.tau(),
                                                    powers, m, i))
                    .epsilon(1e-10));
      }
    }
    const auto brute = oracle::BruteNash(
        [&](std::uint32_t m, std::size_t i) { return g.payoff(m, i); }, n);
    const NashResult res = PureNash(g);
    REQUIRE(res.equilibria.size() == brute.size());
    for (std::size_t k = 0; k < brute.size(); ++k) {
      CHECK(res.equilibria[k] == ProfileFromMask(brute[k], n));
    }
  }
}

TEST_CASE("all-betray is the unique equilibrium") {
  std::mt19937_64 rng(47);
  for (std::size_t n : {3u, 4u, 5u}) {
    for (int i = 0; i < 100; ++i) {
      const auto d = oracle::RandomDraw(rng);
      const Scenario s = Scenario::WithOptimalTau(d.alpha, d.beta, 1);
      const NashResult res =
          NMinerGame(s, Split(rng, s.infiltration(), n), PricePolicy::Equilibrium());
      REQUIRE(res.unique);
      REQUIRE(res.equilibria.front().AllBetray());
    }
  }
  const Scenario s = Case1();
  const double q = s.infiltration() / 4;
  const NashResult four = NMinerGame(s, std::vector<double>(4, q), PricePolicy::Equilibrium());
  CHECK(four.unique);
  CHECK(four.equilibria.front().ToString() == "B,B,B,B");

  // A lone miner: betraying pays more than staying loyal.
  const std::vector<double> one{s.infiltration()};
  const BinaryGame g = MinerBetrayalGame(s, one, PricePolicy::Equilibrium());
  CHECK(g.payoff(1, 0) > g.payoff(0, 0));
  CHECK(NMinerGame(s, one, PricePolicy::Equilibrium()).equilibria.front().ToString() == "B");
}

TEST_CASE("N = 2 reduces to the payoff table") {
  const Scenario s = Case1();
  const double p = 0.004, q = 0.007;
  const PayoffTable2 t = PayoffTableTwo(s, p, q, PricePolicy::Equilibrium());
  const BinaryGame g = MinerBetrayalGame(s, std::vector<double>{p, q},
                                         PricePolicy::Equilibrium());
  const BinaryGame ft = BinaryGame::FromTable(t);
  for (std::uint32_t m = 0; m < 4; ++m) {
    for (std::size_t i = 0; i < 2; ++i) CHECK(g.payoff(m, i) == ft.payoff(m, i));
  }
}

TEST_CASE("game capacity and validation") {
  const Scenario s = Case1();
  CHECK(CodeOf([&] {
          NMinerGame(s, std::vector<double>(13, s.infiltration() / 13),
                     PricePolicy::Equilibrium());
        }) == ErrorCode::kCapacity);
  CHECK_NOTHROW(NMinerGame(s, std::vector<double>(12, s.infiltration() / 12),
                           PricePolicy::Equilibrium()));
  CHECK(CodeOf([&] {
          NMinerGame(s, std::vector<double>{0.01, -0.001}, PricePolicy::Equilibrium());
        }) == ErrorCode::kParameter);
  CHECK(CodeOf([&] {
          NMinerGame(Scenario::Make(0.3, 0.05, 0.5, 1), std::vector<double>{0.05},
                     PricePolicy::Equilibrium());
        }) == ErrorCode::kInfeasibleScenario);
}

TEST_CASE("principal-agent") {
  for (int ai = 1; ai <= 49; ++ai) {
    for (int bi = 1; bi <= 49; ++bi) {
      const Scenario s = Scenario::WithOptimalTau(ai / 100.0, bi / 100.0, 1);
      const double half = s.infiltration() / 2;
      const StrategyProfile out = PrincipalAgent(s, std::vector<double>{half, half});
      REQUIRE(out.pool_action == PoolAction::kHonest);
      REQUIRE(out.ToString() == "H,B,B");
    }
  }
  const StrategyProfile none = PrincipalAgent(Scenario::Make(0.18, 0.15, 0, 1), {});
  CHECK(none.pool_action == PoolAction::kHonest);
  CHECK(none.actions.empty());

  std::mt19937_64 rng(53);
  for (int i = 0; i < 10000; ++i) {
    const auto d = oracle::RandomDraw(rng);
    const Scenario s = Scenario::WithOptimalTau(d.alpha, d.beta, 1);
    const double p = s.infiltration();
    REQUIRE(AttackerTreasury(s, Trade{p, EquilibriumPrice(s, p)}) < s.alpha());
  }
}

TEST_CASE("ultimatum") {
  const Scenario s = Case1();
  const double p = s.infiltration();
  const UltimatumOutcome u = UltimatumEquilibrium(s, p);
  CHECK(u.price == EquilibriumPrice(s, p));
  CHECK(u.response == Response::kAccept);
  CHECK(BdsVictimRevenue(s, u.price) == doctest::Approx(BwhVictimRevenue(s)).epsilon(1e-12));
  const PriceBounds b = ComputePriceBounds(s, p);
  const double at_b = BetrayerRevenue(s, Trade{p, u.price}, p);
  for (int k = 1; k <= 100; ++k) {
    const double T = b.lower + (b.upper - b.lower) * k / 101.0;
    REQUIRE(at_b > BetrayerRevenue(s, Trade{p, T}, p));
    REQUIRE(VictimResponse(s, p, T) == Response::kAccept);
  }
  CHECK(VictimResponse(s, p, b.upper * 1.01) == Response::kReject);
}
