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

// Monte Carlo replay of the mining race under a BWH attack with BDS
// betrayal. One round is one network fPoW discovery; withheld discoveries
// consume the round without publishing a block.
//
// Per-round finder categories and probabilities:
//   others              1 - alpha - beta
//   attacker honest     (1 - tau) alpha
//   victim own          beta
//   loyal infiltrator   (1 - r) tau alpha     (withheld)
//   betrayer            r tau alpha           (sold to and published by the victim)
//
// Replica i draws from Xoshiro256StarStar(StreamSeed(seed, i)); see rng.hpp.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "bdslab/model.hpp"

namespace bdslab {

enum class SimMode { kRoundLevel, kShareLevel };

// Source of the uniform that picks each round's (or share's) finder.
// kWeyl uses a golden-ratio Weyl sequence with a per-replica random shift:
// still unbiased across replicas, with far smaller variance.
enum class Sampling { kIndependent, kWeyl };

struct SimConfig {
  std::uint64_t rounds = 1'000'000;
  std::uint64_t seed = 1;
  std::uint32_t replicas = 8;
  SimMode mode = SimMode::kRoundLevel;
  // Expected pPoW per fPoW (ShareLevel only).
  std::uint32_t share_difficulty = 1;
  Sampling sampling = Sampling::kWeyl;
  // Fault injection: betrayers hand their pPoW batch to the victim without
  // the fPoW, which the victim discards.
  bool omit_fpow = false;
  // Worker threads for replicas; 0 picks the hardware concurrency.
  unsigned threads = 0;

  // Throws kParameter on out-of-range fields.
  void Validate() const;
};

enum class Finder : std::size_t {
  kOthers,
  kAttackerHonest,
  kVictimOwn,
  kLoyalInfiltrator,
  kBetrayer,
};
inline constexpr std::size_t kFinderCount = 5;

// Raw counts and settled revenues (block-reward units) of one or more
// replicas.
struct SimTallies {
  std::uint64_t rounds = 0;
  std::array<std::uint64_t, kFinderCount> found{};
  std::uint64_t published = 0;
  std::uint64_t withheld = 0;
  std::uint64_t sold = 0;      // betrayer fPoW accepted by the victim
  std::uint64_t rejected = 0;  // betrayer submissions without fPoW

  // pPoW ledgers. RoundLevel leaves these at zero.
  std::uint64_t shares_total = 0;
  std::uint64_t pool_a_shares = 0;           // all attacking-pool members
  std::uint64_t pool_a_betrayer_shares = 0;
  std::uint64_t pool_b_own_shares = 0;
  std::uint64_t pool_b_infiltrator_shares = 0;
  std::uint64_t traded_shares = 0;           // pPoW paid with a sale

  double others = 0.0;
  double victim_own = 0.0;
  double attacker_treasury = 0.0;
  double trade_income = 0.0;
  double bds_miner = 0.0;
  double loyal_miners = 0.0;

  std::uint64_t count(Finder f) const {
    return found[static_cast<std::size_t>(f)];
  }
  // others + victim_own + attacker_treasury + trade_income - published.
  double conservation_error() const;

  SimTallies& operator+=(const SimTallies& other);
  friend bool operator==(const SimTallies&, const SimTallies&) = default;
};

enum class Actor {
  kAttackerPool,
  kBdsMiner,
  kVictimPool,
  kOthers,
  kLoyalMiners,
};
inline constexpr std::size_t kActorCount = 5;

std::string_view ActorName(Actor actor);

struct ActorEstimate {
  Actor actor = Actor::kOthers;
  // False when the actor holds no power (e.g. no betrayers at r = 0).
  bool defined = false;
  double honest_baseline = 0.0;
  double analytic_rer = 0.0;
  double mean_rer = 0.0;
  double stderr_rer = 0.0;  // across replicas; 0 for a single replica

  friend bool operator==(const ActorEstimate&, const ActorEstimate&) = default;
};

struct SimEstimate {
  std::array<ActorEstimate, kActorCount> actors{};
  SimTallies tallies;                     // summed across replicas
  std::vector<SimTallies> replica_tallies;
  double withheld_rate_mean = 0.0;
  double withheld_rate_stderr = 0.0;
  double price = 0.0;           // T(p), per unit of published reward
  double per_sale_price = 0.0;  // pi = T(p) (1 - tau alpha + p) / p
  std::uint64_t rounds_executed = 0;
  std::uint64_t seed = 0;
  std::uint32_t replicas = 0;

  const ActorEstimate& actor(Actor a) const {
    return actors[static_cast<std::size_t>(a)];
  }
  friend bool operator==(const SimEstimate&, const SimEstimate&) = default;
};

// Price paid per sold fPoW so that expected payments per published block
// equal T(p).
double PerSalePrice(const Scenario& s, double price);

// One replica with stream index `replica`, at trade price T = `price`.
SimTallies RunReplica(const Scenario& s, const SimConfig& cfg, double price,
                      std::uint64_t replica);

// Runs cfg.replicas replicas in cfg.mode and aggregates them.
SimEstimate Simulate(const Scenario& s, const SimConfig& cfg,
                     const PricePolicy& policy);

// Simulate with the mode forced to ShareLevel.
SimEstimate SimulateShareLevel(const Scenario& s, SimConfig cfg,
                               const PricePolicy& policy);

// Simulate with replicas >= 2 enforced, for variance estimation.
SimEstimate Replicate(const Scenario& s, const SimConfig& cfg,
                      const PricePolicy& policy);

}  // namespace bdslab
