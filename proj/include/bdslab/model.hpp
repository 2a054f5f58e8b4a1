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

#pragma once

// Closed-form revenue model of a block-withholding (BWH) attack and of the
// block double-submission (BDS) trade layered on top of it.
//
// Units: every revenue is a fraction of the total published block reward.
// Powers are fractions of total network hash power.

#include <ostream>

namespace bdslab {

// A fraction of total network hash power.
class PowerShare {
 public:
  explicit PowerShare(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

// Attack parameters: attacking pool power alpha, victim pool power beta,
// infiltration ratio tau and the participation ratio r of infiltrating power
// that betrays the attacking pool.
class Scenario {
 public:
  // Throws kParameter unless 0 < alpha, beta < 0.5 and tau, r lie in [0, 1].
  Scenario(PowerShare alpha, PowerShare beta, double tau, double participation);

  static Scenario Make(double alpha, double beta, double tau,
                       double participation);
  static Scenario WithOptimalTau(double alpha, double beta,
                                 double participation);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double tau() const noexcept { return tau_; }
  double participation() const noexcept { return participation_; }

  // Infiltrating power tau * alpha.
  double infiltration() const noexcept { return tau_ * alpha_; }
  // Collective betraying power p = r * tau * alpha.
  double betraying_power() const noexcept {
    return participation_ * tau_ * alpha_;
  }

  // tau * alpha < beta. Pricing and game analysis assume it.
  bool trade_chain_holds() const noexcept { return infiltration() < beta_; }
  // Throws kInfeasibleScenario naming the violated inequality.
  void RequireTradeChain() const;

  Scenario WithParticipation(double participation) const;
  Scenario WithTau(double tau) const;

 private:
  double alpha_;
  double beta_;
  double tau_;
  double participation_;
};

std::ostream& operator<<(std::ostream& os, const Scenario& s);

// A realized trade: collective betraying power and the price T paid for its
// fPoW stream, per unit of total published reward.
struct Trade {
  double betraying_power = 0.0;
  double price = 0.0;
};

// How the trade price is chosen for a collective betraying power p.
struct PricePolicy {
  enum class Kind {
    kEquilibrium,       // victim's indifference price (C1 bound)
    kZero,              // price 0
    kFixed,             // a given T, must lie in [0, C1 bound]
    kIntervalFraction,  // lower + value * (upper - lower)
  };

  Kind kind = Kind::kEquilibrium;
  double value = 0.0;

  static PricePolicy Equilibrium() { return {Kind::kEquilibrium, 0.0}; }
  static PricePolicy Zero() { return {Kind::kZero, 0.0}; }
  static PricePolicy Fixed(double price) { return {Kind::kFixed, price}; }
  static PricePolicy IntervalFraction(double f) {
    return {Kind::kIntervalFraction, f};
  }
};

// Expected per-actor revenue for one scenario.
struct RevenueReport {
  double attacker_pool = 0.0;      // treasury distributed by the attacking pool
  double victim_own_miners = 0.0;  // victim pool income kept by its own miners
  double bds_trade_income = 0.0;   // price payments received by betrayers
  double bds_miner_total = 0.0;    // betrayers: trade income + pool share
  double loyal_miner_total = 0.0;  // all non-betraying attacking-pool members
  double others = 0.0;             // miners outside both pools
  double price = 0.0;

  // others + victim_own_miners + attacker_pool + bds_trade_income.
  double total() const noexcept {
    return others + victim_own_miners + attacker_pool + bds_trade_income;
  }
};

// Baseline BWH attack without any betrayal.
double BwhAttackerRevenue(const Scenario& s);
double BwhVictimRevenue(const Scenario& s);
double BwhOthersRevenue(const Scenario& s);

// Infiltration ratio maximizing BwhAttackerRevenue for the given powers.
double OptimalTau(double alpha, double beta);

// Revenues under a trade of arbitrary collective power. These are the
// building blocks; the Bds* functions below fix p = r * tau * alpha.
double VictimRevenue(const Scenario& s, const Trade& trade);
double AttackerTreasury(const Scenario& s, const Trade& trade);
double OthersRevenue(const Scenario& s, const Trade& trade);
// Member of the betraying collective with power `individual`; trade income
// is split in proportion to power.
double BetrayerRevenue(const Scenario& s, const Trade& trade,
                       double individual);
// Attacking-pool member with power `individual` that does not betray.
double LoyalRevenue(const Scenario& s, const Trade& trade, double individual);

// Loyal member baseline R_{b,m}: no trade at all.
double NoTradeMemberRevenue(const Scenario& s, double individual);

double BdsVictimRevenue(const Scenario& s, double price);
double BdsMinerRevenue(const Scenario& s, double p_individual, double price);
double LoyalMinerRevenue(const Scenario& s, double q_individual, double price);

// Relative extra reward (attack - honest) / honest.
double Rer(double revenue_attack, double revenue_honest);

RevenueReport MakeRevenueReport(const Scenario& s, const PricePolicy& policy);

}  // namespace bdslab
