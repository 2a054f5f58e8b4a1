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

#include "bdslab/model.hpp"

#include <cmath>
#include <sstream>

#include "bdslab/error.hpp"
#include "bdslab/pricing.hpp"

namespace bdslab {
namespace {

void RequireUnitInterval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << name << " must lie in [0, 1], got " << v;
    Fail(ErrorCode::kParameter, msg.str());
  }
}

void RequirePoolPower(double v, const char* name) {
  if (!(v > 0.0 && v < 0.5)) {
    std::ostringstream msg;
    msg << name << " must satisfy 0 < " << name << " < 0.5, got " << v;
    Fail(ErrorCode::kParameter, msg.str());
  }
}

void RequirePrice(double price) {
  if (!(price >= 0.0) || !std::isfinite(price)) {
    std::ostringstream msg;
    msg << "price must be finite and >= 0, got " << price;
    Fail(ErrorCode::kParameter, msg.str());
  }
}

double Published(const Scenario& s, const Trade& t) {
  return 1.0 - s.infiltration() + t.betraying_power;
}

// Victim pool income net of trade payments, before the split between its own
// miners and the infiltrators' accounts.
double VictimNetIncome(const Scenario& s, const Trade& t) {
  return (s.beta() + t.betraying_power) / Published(s, t) - t.price;
}

double VictimOwnFraction(const Scenario& s) {
  return s.beta() / (s.beta() + s.infiltration());
}

double InfiltratorFraction(const Scenario& s) {
  return s.infiltration() / (s.beta() + s.infiltration());
}

}  // namespace

PowerShare::PowerShare(double value) : value_(value) {
  RequireUnitInterval(value, "power share");
}

Scenario::Scenario(PowerShare alpha, PowerShare beta, double tau,
                   double participation)
    : alpha_(alpha.value()),
      beta_(beta.value()),
      tau_(tau),
      participation_(participation) {
  RequirePoolPower(alpha_, "alpha");
  RequirePoolPower(beta_, "beta");
  RequireUnitInterval(tau_, "tau");
  RequireUnitInterval(participation_, "participation");
}

Scenario Scenario::Make(double alpha, double beta, double tau,
                        double participation) {
  return Scenario(PowerShare(alpha), PowerShare(beta), tau, participation);
}

Scenario Scenario::WithOptimalTau(double alpha, double beta,
                                  double participation) {
  return Make(alpha, beta, OptimalTau(alpha, beta), participation);
}

void Scenario::RequireTradeChain() const {
  if (!trade_chain_holds()) {
    std::ostringstream msg;
    msg << "requires tau*alpha < beta, but tau*alpha = "
        << infiltration() << " >= beta = " << beta_;
    Fail(ErrorCode::kInfeasibleScenario, msg.str());
  }
}

Scenario Scenario::WithParticipation(double participation) const {
  return Make(alpha_, beta_, tau_, participation);
}

Scenario Scenario::WithTau(double tau) const {
  return Make(alpha_, beta_, tau, participation_);
}

std::ostream& operator<<(std::ostream& os, const Scenario& s) {
  return os << "Scenario(alpha=" << s.alpha() << ", beta=" << s.beta()
            << ", tau=" << s.tau() << ", r=" << s.participation() << ")";
}

double BwhAttackerRevenue(const Scenario& s) {
  return AttackerTreasury(s, Trade{});
}

double BwhVictimRevenue(const Scenario& s) { return VictimRevenue(s, Trade{}); }

double BwhOthersRevenue(const Scenario& s) { return OthersRevenue(s, Trade{}); }

double OptimalTau(double alpha, double beta) {
  RequirePoolPower(alpha, "alpha");
  RequirePoolPower(beta, "beta");
  // Rationalized form of
  //   (b - ab - sqrt(b^2 - ab^2 - ab^3)) / (-a + a^2 + ab),
  // which cancels catastrophically for small alpha.
  const double root = std::sqrt(1.0 - alpha - alpha * beta);
  const double denom = (1.0 - alpha) + root;
  if (!(denom > 0.0) || !std::isfinite(root)) {
    Fail(ErrorCode::kDegenerate, "optimal tau undefined for these powers");
  }
  return beta / denom;
}

double VictimRevenue(const Scenario& s, const Trade& t) {
  return VictimNetIncome(s, t) * VictimOwnFraction(s);
}

double AttackerTreasury(const Scenario& s, const Trade& t) {
  const double direct = (1.0 - s.tau()) * s.alpha() / Published(s, t);
  return direct + VictimNetIncome(s, t) * InfiltratorFraction(s);
}

double OthersRevenue(const Scenario& s, const Trade& t) {
  return (1.0 - s.alpha() - s.beta()) / Published(s, t);
}

double BetrayerRevenue(const Scenario& s, const Trade& t, double individual) {
  if (!(t.betraying_power > 0.0)) {
    Fail(ErrorCode::kDegenerate, "no betraying power, no trade income");
  }
  if (!(individual > 0.0 && individual <= t.betraying_power)) {
    std::ostringstream msg;
    msg << "individual power " << individual
        << " must lie in (0, collective power " << t.betraying_power << "]";
    Fail(ErrorCode::kParameter, msg.str());
  }
  return individual / t.betraying_power * t.price +
         individual / s.alpha() * AttackerTreasury(s, t);
}

double LoyalRevenue(const Scenario& s, const Trade& t, double individual) {
  if (!(individual >= 0.0)) {
    Fail(ErrorCode::kParameter, "individual power must be >= 0");
  }
  return individual / s.alpha() * AttackerTreasury(s, t);
}

double NoTradeMemberRevenue(const Scenario& s, double individual) {
  return LoyalRevenue(s, Trade{}, individual);
}

double BdsVictimRevenue(const Scenario& s, double price) {
  const double p = s.betraying_power();
  if (!(p > 0.0)) Fail(ErrorCode::kDegenerate, "p = r*tau*alpha is 0: no trade");
  RequirePrice(price);
  return VictimRevenue(s, Trade{p, price});
}

double BdsMinerRevenue(const Scenario& s, double p_individual, double price) {
  RequirePrice(price);
  return BetrayerRevenue(s, Trade{s.betraying_power(), price}, p_individual);
}

double LoyalMinerRevenue(const Scenario& s, double q_individual, double price) {
  if (!(q_individual > 0.0)) {
    Fail(ErrorCode::kParameter, "loyal miner power must be > 0");
  }
  RequirePrice(price);
  return LoyalRevenue(s, Trade{s.betraying_power(), price}, q_individual);
}

double Rer(double revenue_attack, double revenue_honest) {
  if (!(revenue_honest > 0.0) || !std::isfinite(revenue_honest)) {
    Fail(ErrorCode::kParameter, "honest revenue must be positive");
  }
  return (revenue_attack - revenue_honest) / revenue_honest;
}

RevenueReport MakeRevenueReport(const Scenario& s, const PricePolicy& policy) {
  const double p = s.betraying_power();
  if (p > 0.0) s.RequireTradeChain();
  const Trade trade{p, ResolvePrice(s, p, policy)};

  RevenueReport r;
  r.price = trade.price;
  r.others = OthersRevenue(s, trade);
  r.victim_own_miners = VictimRevenue(s, trade);
  r.attacker_pool = AttackerTreasury(s, trade);
  r.bds_trade_income = p > 0.0 ? trade.price : 0.0;
  r.bds_miner_total = p > 0.0 ? BetrayerRevenue(s, trade, p) : 0.0;
  r.loyal_miner_total = LoyalRevenue(s, trade, s.alpha() - p);
  return r;
}

}  // namespace bdslab
