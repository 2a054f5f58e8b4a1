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

#include "bdslab/game.hpp"

#include <numeric>
#include <sstream>

#include "bdslab/error.hpp"
#include "bdslab/pricing.hpp"

namespace bdslab {
namespace {

constexpr double kPowerSlack = 1e-12;

void RequireMinerPowers(const Scenario& s, std::span<const double> powers) {
  if (powers.empty()) Fail(ErrorCode::kParameter, "at least one miner needed");
  if (powers.size() > kMaxMiners) {
    std::ostringstream msg;
    msg << powers.size() << " miners exceed the enumeration bound of "
        << kMaxMiners;
    Fail(ErrorCode::kCapacity, msg.str());
  }
  if (!(s.infiltration() > 0.0)) {
    Fail(ErrorCode::kDegenerate, "tau*alpha = 0: no infiltrating miners");
  }
  s.RequireTradeChain();
  double total = 0.0;
  for (double p : powers) {
    if (!(p > 0.0)) Fail(ErrorCode::kParameter, "miner powers must be > 0");
    total += p;
  }
  if (total > s.infiltration() * (1.0 + kPowerSlack)) {
    std::ostringstream msg;
    msg << "miner powers sum to " << total << " > tau*alpha = "
        << s.infiltration();
    Fail(ErrorCode::kParameter, msg.str());
  }
}

double CollectivePower(std::span<const double> powers, std::uint32_t mask) {
  double total = 0.0;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (mask & (std::uint32_t{1} << i)) total += powers[i];
  }
  return total;
}

double MinerPayoff(const Scenario& s, std::span<const double> powers,
                   std::uint32_t mask, std::size_t i,
                   const PricePolicy& policy) {
  const double collective = CollectivePower(powers, mask);
  const Trade trade{collective, ResolvePrice(s, collective, policy)};
  if (mask & (std::uint32_t{1} << i)) {
    return BetrayerRevenue(s, trade, powers[i]);
  }
  return LoyalRevenue(s, trade, powers[i]);
}

}  // namespace

std::string StrategyProfile::ToString() const {
  std::string out;
  if (pool_action) out += *pool_action == PoolAction::kAttack ? "A" : "H";
  for (MinerAction a : actions) {
    if (!out.empty()) out += ',';
    out += a == MinerAction::kBetray ? 'B' : 'C';
  }
  return out;
}

bool StrategyProfile::AllBetray() const {
  for (MinerAction a : actions) {
    if (a != MinerAction::kBetray) return false;
  }
  return true;
}

BinaryGame::BinaryGame(std::size_t players, std::vector<double> payoffs)
    : players_(players), payoffs_(std::move(payoffs)) {
  if (players_ == 0) Fail(ErrorCode::kParameter, "game needs a player");
  if (players_ > kMaxMiners) {
    Fail(ErrorCode::kCapacity, "too many players to enumerate");
  }
  if (payoffs_.size() != profiles() * players_) {
    Fail(ErrorCode::kParameter, "payoff vector has the wrong size");
  }
}

BinaryGame BinaryGame::FromTable(const PayoffTable2& t) {
  // Profile bit 0 is miner 1, bit 1 is miner 2.
  return BinaryGame(2, {
                           t.r, t.r_prime,  // (C, C)
                           t.h, t.d_prime,  // (B, C)
                           t.d, t.h_prime,  // (C, B)
                           t.l, t.l_prime,  // (B, B)
                       });
}

StrategyProfile ProfileFromMask(std::uint32_t mask, std::size_t players) {
  StrategyProfile profile;
  profile.actions.reserve(players);
  for (std::size_t i = 0; i < players; ++i) {
    profile.actions.push_back((mask >> i) & 1u ? MinerAction::kBetray
                                               : MinerAction::kCooperate);
  }
  return profile;
}

NashResult PureNash(const BinaryGame& game) {
  NashResult result;
  for (std::uint32_t mask = 0; mask < game.profiles(); ++mask) {
    bool stable = true;
    for (std::size_t i = 0; i < game.players() && stable; ++i) {
      const std::uint32_t deviation = mask ^ (std::uint32_t{1} << i);
      stable = !(game.payoff(deviation, i) > game.payoff(mask, i));
    }
    if (stable) result.equilibria.push_back(ProfileFromMask(mask, game.players()));
  }
  result.unique = result.equilibria.size() == 1;
  return result;
}

NashResult PureNash(const PayoffTable2& table) {
  return PureNash(BinaryGame::FromTable(table));
}

PayoffTable2 PayoffTableTwo(const Scenario& s, double p, double q,
                            const PricePolicy& policy) {
  const double powers[] = {p, q};
  const BinaryGame game = MinerBetrayalGame(s, powers, policy);
  PayoffTable2 t;
  t.p = p;
  t.q = q;
  t.r = game.payoff(0b00, 0);
  t.h = game.payoff(0b01, 0);
  t.d = game.payoff(0b10, 0);
  t.l = game.payoff(0b11, 0);
  t.r_prime = game.payoff(0b00, 1);
  t.h_prime = game.payoff(0b10, 1);
  t.d_prime = game.payoff(0b01, 1);
  t.l_prime = game.payoff(0b11, 1);
  return t;
}

BinaryGame MinerBetrayalGame(const Scenario& s, std::span<const double> powers,
                             const PricePolicy& policy) {
  RequireMinerPowers(s, powers);
  const std::size_t n = powers.size();
  const std::uint32_t profiles = std::uint32_t{1} << n;
  std::vector<double> payoffs(profiles * n);
  for (std::uint32_t mask = 0; mask < profiles; ++mask) {
    for (std::size_t i = 0; i < n; ++i) {
      payoffs[mask * n + i] = MinerPayoff(s, powers, mask, i, policy);
    }
  }
  return BinaryGame(n, std::move(payoffs));
}

NashResult NMinerGame(const Scenario& s, std::span<const double> powers,
                      const PricePolicy& policy) {
  return PureNash(MinerBetrayalGame(s, powers, policy));
}

StrategyProfile PrincipalAgent(const Scenario& s,
                               std::span<const double> powers) {
  if (s.infiltration() == 0.0) {
    // Attacking with no infiltration earns exactly alpha: a tie.
    if (!powers.empty()) {
      Fail(ErrorCode::kParameter, "tau = 0 leaves no power for miners");
    }
    return StrategyProfile{{}, PoolAction::kHonest};
  }
  const PricePolicy policy = PricePolicy::Equilibrium();
  const NashResult subgame = NMinerGame(s, powers, policy);

  // The pool attacks only if every equilibrium of the miners' subgame leaves
  // it strictly better off than honest mining.
  bool attack = !subgame.equilibria.empty();
  for (const StrategyProfile& eq : subgame.equilibria) {
    double collective = 0.0;
    for (std::size_t i = 0; i < powers.size(); ++i) {
      if (eq.actions[i] == MinerAction::kBetray) collective += powers[i];
    }
    const Trade trade{collective, ResolvePrice(s, collective, policy)};
    attack = attack && AttackerTreasury(s, trade) > s.alpha();
  }

  StrategyProfile out = subgame.equilibria.empty()
                            ? ProfileFromMask(0, powers.size())
                            : subgame.equilibria.front();
  out.pool_action = attack ? PoolAction::kAttack : PoolAction::kHonest;
  return out;
}

Response VictimResponse(const Scenario& s, double p, double price) {
  const double baseline = BwhVictimRevenue(s);
  const double with_trade = VictimRevenue(s, Trade{p, price});
  return with_trade >= baseline * (1.0 - 1e-12) ? Response::kAccept
                                               : Response::kReject;
}

UltimatumOutcome UltimatumEquilibrium(const Scenario& s, double p) {
  // The proposer's income is increasing in the price, and the responder
  // accepts everything up to the C1 bound, so the proposer names that bound.
  const double price = EquilibriumPrice(s, p);
  return {price, VictimResponse(s, p, price)};
}

}  // namespace bdslab
