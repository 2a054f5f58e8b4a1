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

// Betrayal games among the infiltrating miners of a BWH-attacking pool, the
// pool-versus-miners principal-agent game and the block pricing ultimatum.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bdslab/model.hpp"

namespace bdslab {

enum class MinerAction { kCooperate, kBetray };
enum class PoolAction { kAttack, kHonest };
enum class Response { kAccept, kReject };

struct StrategyProfile {
  std::vector<MinerAction> actions;
  std::optional<PoolAction> pool_action;

  // "B,B" or, with a pool action, "H,B,B".
  std::string ToString() const;
  bool AllBetray() const;

  friend bool operator==(const StrategyProfile&,
                         const StrategyProfile&) = default;
};

struct NashResult {
  std::vector<StrategyProfile> equilibria;
  bool unique = false;
};

// Two-miner payoff table. Miner 1 picks the row, miner 2 the column:
//
//              C          B
//     C     R, R'      D, H'
//     B     H, D'      L, L'
struct PayoffTable2 {
  double r = 0, d = 0, h = 0, l = 0;
  double r_prime = 0, d_prime = 0, h_prime = 0, l_prime = 0;
  double p = 0, q = 0;
};

inline constexpr std::size_t kMaxMiners = 12;

// Finite game in which each of N players chooses Cooperate or Betray.
// Profiles are bitmasks: bit i set means player i betrays.
class BinaryGame {
 public:
  // payoffs[profile * players + i] is player i's payoff under `profile`.
  BinaryGame(std::size_t players, std::vector<double> payoffs);

  static BinaryGame FromTable(const PayoffTable2& table);

  std::size_t players() const noexcept { return players_; }
  std::uint32_t profiles() const noexcept {
    return std::uint32_t{1} << players_;
  }
  double payoff(std::uint32_t profile, std::size_t player) const {
    return payoffs_[profile * players_ + player];
  }

 private:
  std::size_t players_;
  std::vector<double> payoffs_;
};

StrategyProfile ProfileFromMask(std::uint32_t mask, std::size_t players);

// All pure Nash equilibria by exhaustive enumeration. A player deviates only
// for a strictly greater payoff.
NashResult PureNash(const BinaryGame& game);
NashResult PureNash(const PayoffTable2& table);

// Requires p, q > 0, p + q <= tau*alpha and tau*alpha < beta. Each cell uses
// the price the policy assigns to the realized collective betraying power.
PayoffTable2 PayoffTableTwo(const Scenario& s, double p, double q,
                            const PricePolicy& policy);

// Betraying subset S trades as one collective of power p_S at price T(p_S);
// betrayers split trade income by power, everyone is paid by the pool in
// proportion to power. Throws kCapacity beyond kMaxMiners.
BinaryGame MinerBetrayalGame(const Scenario& s, std::span<const double> powers,
                             const PricePolicy& policy);

NashResult NMinerGame(const Scenario& s, std::span<const double> powers,
                      const PricePolicy& policy);

// Backward induction: solve the miners' subgame under Attack at the
// equilibrium price, then let the pool compare its treasury with the honest
// revenue alpha. Ties go to Honest.
StrategyProfile PrincipalAgent(const Scenario& s,
                               std::span<const double> powers);

struct UltimatumOutcome {
  double price = 0.0;
  Response response = Response::kReject;
};

// Subgame-perfect outcome of the pricing game for betraying power p.
UltimatumOutcome UltimatumEquilibrium(const Scenario& s, double p);

// The responder's rule: accept iff the victim does not lose against the
// no-trade baseline (indifference counts as acceptance).
Response VictimResponse(const Scenario& s, double p, double price);

}  // namespace bdslab
