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

#include "bdslab/montecarlo.hpp"

#include <cmath>
#include <sstream>

#include "bdslab/error.hpp"
#include "bdslab/pricing.hpp"
#include "bdslab/rng.hpp"
#include "parallel.hpp"

namespace bdslab {
namespace {

// Maps a uniform in [0, 1) onto the finder categories.
class FinderTable {
 public:
  explicit FinderTable(const Scenario& s) {
    const double a = s.alpha();
    const double ta = s.infiltration();
    const double weights[kFinderCount - 1] = {
        1.0 - a - s.beta(),
        a - ta,
        s.beta(),
        ta - s.betraying_power(),
    };
    double acc = 0.0;
    for (std::size_t k = 0; k < cut_.size(); ++k) cut_[k] = acc += weights[k];
  }

  std::size_t operator()(double u) const {
    std::size_t k = 0;
    while (k < cut_.size() && u >= cut_[k]) ++k;
    return k;
  }

 private:
  std::array<double, kFinderCount - 1> cut_{};
};

constexpr std::size_t Idx(Finder f) { return static_cast<std::size_t>(f); }

template <class Draw>
void RunRoundLevel(const SimConfig& cfg, const FinderTable& table, Draw& draw,
                   SimTallies& t) {
  for (std::uint64_t round = 0; round < cfg.rounds; ++round) {
    ++t.found[table(draw())];
  }
}

// Literal message flow: every pPoW goes to the ledgers of the pools its miner
// works for; the round ends at the first pPoW that is also an fPoW.
template <class Draw>
void RunShareLevel(const SimConfig& cfg, const FinderTable& table, Draw& draw,
                   Xoshiro256StarStar& rng, SimTallies& t) {
  const double fpow_odds = 1.0 / cfg.share_difficulty;
  const bool every_share_is_full = cfg.share_difficulty == 1;
  std::uint64_t betrayer_batch = 0;  // pPoW not yet sent to the victim with an fPoW

  for (std::uint64_t round = 0; round < cfg.rounds; ++round) {
    std::size_t finder = 0;
    bool full = false;
    while (!full) {
      finder = table(draw());
      ++t.shares_total;
      switch (static_cast<Finder>(finder)) {
        case Finder::kOthers:
          break;
        case Finder::kAttackerHonest:
          ++t.pool_a_shares;
          break;
        case Finder::kVictimOwn:
          ++t.pool_b_own_shares;
          break;
        case Finder::kLoyalInfiltrator:
          ++t.pool_a_shares;
          ++t.pool_b_infiltrator_shares;
          break;
        case Finder::kBetrayer:
          // send(A, pPoW); the infiltrating account at B also counts it.
          ++t.pool_a_shares;
          ++t.pool_a_betrayer_shares;
          ++t.pool_b_infiltrator_shares;
          ++betrayer_batch;
          break;
      }
      full = every_share_is_full || rng.uniform() < fpow_odds;
    }
    ++t.found[finder];
    if (static_cast<Finder>(finder) == Finder::kBetrayer) {
      // send(B, (pPoW, fPoW)); the victim quits on a missing fPoW and
      // otherwise publishes and pays by pPoW count.
      if (!cfg.omit_fpow) t.traded_shares += betrayer_batch;
      betrayer_batch = 0;
    }
  }
}

void Settle(const Scenario& s, const SimConfig& cfg, double per_sale,
            SimTallies& t) {
  const std::uint64_t betrayer_blocks = t.count(Finder::kBetrayer);
  t.sold = cfg.omit_fpow ? 0 : betrayer_blocks;
  t.rejected = betrayer_blocks - t.sold;
  t.withheld = t.count(Finder::kLoyalInfiltrator) + (betrayer_blocks - t.sold);
  t.published = t.count(Finder::kOthers) + t.count(Finder::kAttackerHonest) +
                t.count(Finder::kVictimOwn) + t.sold;

  const bool by_shares = cfg.mode == SimMode::kShareLevel;
  const double victim_gross =
      static_cast<double>(t.count(Finder::kVictimOwn) + t.sold);
  t.trade_income =
      by_shares ? static_cast<double>(t.traded_shares) * per_sale /
                      cfg.share_difficulty
                : static_cast<double>(t.sold) * per_sale;
  const double victim_net = victim_gross - t.trade_income;

  double own_fraction = 0.0;
  double betrayer_fraction = 0.0;
  if (by_shares) {
    const std::uint64_t b_total =
        t.pool_b_own_shares + t.pool_b_infiltrator_shares;
    if (b_total > 0) {
      own_fraction = static_cast<double>(t.pool_b_own_shares) / b_total;
    }
    if (t.pool_a_shares > 0) {
      betrayer_fraction =
          static_cast<double>(t.pool_a_betrayer_shares) / t.pool_a_shares;
    }
  } else {
    own_fraction = s.beta() / (s.beta() + s.infiltration());
    betrayer_fraction = s.betraying_power() / s.alpha();
  }

  t.others = static_cast<double>(t.count(Finder::kOthers));
  t.victim_own = victim_net * own_fraction;
  const double infiltrator_payout = victim_net - t.victim_own;
  t.attacker_treasury =
      static_cast<double>(t.count(Finder::kAttackerHonest)) + infiltrator_payout;
  const double betrayer_pool_share = t.attacker_treasury * betrayer_fraction;
  t.bds_miner = t.trade_income + betrayer_pool_share;
  t.loyal_miners = t.attacker_treasury - betrayer_pool_share;
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr Summarize(const std::vector<double>& xs) {
  MeanStderr out;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) out.mean += x;
  out.mean /= n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.stderr_ = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

double ActorRevenue(const SimTallies& t, Actor a) {
  switch (a) {
    case Actor::kAttackerPool: return t.attacker_treasury;
    case Actor::kBdsMiner: return t.bds_miner;
    case Actor::kVictimPool: return t.victim_own;
    case Actor::kOthers: return t.others;
    case Actor::kLoyalMiners: return t.loyal_miners;
  }
  return 0.0;
}

double AnalyticRevenue(const RevenueReport& r, Actor a) {
  switch (a) {
    case Actor::kAttackerPool: return r.attacker_pool;
    case Actor::kBdsMiner: return r.bds_miner_total;
    case Actor::kVictimPool: return r.victim_own_miners;
    case Actor::kOthers: return r.others;
    case Actor::kLoyalMiners: return r.loyal_miner_total;
  }
  return 0.0;
}

double HonestBaseline(const Scenario& s, Actor a) {
  switch (a) {
    case Actor::kAttackerPool: return s.alpha();
    case Actor::kBdsMiner: return s.betraying_power();
    case Actor::kVictimPool: return s.beta();
    case Actor::kOthers: return 1.0 - s.alpha() - s.beta();
    case Actor::kLoyalMiners: return s.alpha() - s.betraying_power();
  }
  return 0.0;
}

}  // namespace

void SimConfig::Validate() const {
  auto bad = [](const char* what) { Fail(ErrorCode::kParameter, what); };
  if (rounds < 1) bad("rounds must be >= 1");
  if (replicas < 1) bad("replicas must be >= 1");
  if (share_difficulty < 1) bad("share difficulty must be >= 1");
  if (mode == SimMode::kRoundLevel && share_difficulty != 1) {
    bad("share difficulty applies to share-level mode only");
  }
}

double SimTallies::conservation_error() const {
  return others + victim_own + attacker_treasury + trade_income -
         static_cast<double>(published);
}

SimTallies& SimTallies::operator+=(const SimTallies& o) {
  rounds += o.rounds;
  for (std::size_t k = 0; k < kFinderCount; ++k) found[k] += o.found[k];
  published += o.published;
  withheld += o.withheld;
  sold += o.sold;
  rejected += o.rejected;
  shares_total += o.shares_total;
  pool_a_shares += o.pool_a_shares;
  pool_a_betrayer_shares += o.pool_a_betrayer_shares;
  pool_b_own_shares += o.pool_b_own_shares;
  pool_b_infiltrator_shares += o.pool_b_infiltrator_shares;
  traded_shares += o.traded_shares;
  others += o.others;
  victim_own += o.victim_own;
  attacker_treasury += o.attacker_treasury;
  trade_income += o.trade_income;
  bds_miner += o.bds_miner;
  loyal_miners += o.loyal_miners;
  return *this;
}

std::string_view ActorName(Actor actor) {
  switch (actor) {
    case Actor::kAttackerPool: return "attacker_pool";
    case Actor::kBdsMiner: return "bds_miner";
    case Actor::kVictimPool: return "victim_pool";
    case Actor::kOthers: return "others";
    case Actor::kLoyalMiners: return "loyal_miners";
  }
  return "unknown";
}

double PerSalePrice(const Scenario& s, double price) {
  const double p = s.betraying_power();
  if (!(p > 0.0)) return 0.0;
  return price * (1.0 - s.infiltration() + p) / p;
}

SimTallies RunReplica(const Scenario& s, const SimConfig& cfg, double price,
                      std::uint64_t replica) {
  cfg.Validate();
  const FinderTable table(s);
  Xoshiro256StarStar rng(StreamSeed(cfg.seed, replica));
  SimTallies t;
  t.rounds = cfg.rounds;

  auto run = [&](auto& draw) {
    if (cfg.mode == SimMode::kRoundLevel) {
      RunRoundLevel(cfg, table, draw, t);
    } else {
      RunShareLevel(cfg, table, draw, rng, t);
    }
  };
  if (cfg.sampling == Sampling::kWeyl) {
    WeylSequence weyl(rng());
    auto draw = [&weyl] { return weyl.next(); };
    run(draw);
  } else {
    auto draw = [&rng] { return rng.uniform(); };
    run(draw);
  }
  Settle(s, cfg, PerSalePrice(s, price), t);
  return t;
}

SimEstimate Simulate(const Scenario& s, const SimConfig& cfg,
                     const PricePolicy& policy) {
  cfg.Validate();
  const RevenueReport report = MakeRevenueReport(s, policy);

  std::vector<SimTallies> runs(cfg.replicas);
  internal::ParallelFor(cfg.replicas, cfg.threads, [&](std::size_t i) {
    runs[i] = RunReplica(s, cfg, report.price, i);
  });

  SimEstimate est;
  est.price = report.price;
  est.per_sale_price = PerSalePrice(s, report.price);
  est.seed = cfg.seed;
  est.replicas = cfg.replicas;
  for (const SimTallies& t : runs) est.tallies += t;
  est.rounds_executed = est.tallies.rounds;

  std::vector<double> xs(runs.size());
  for (std::size_t k = 0; k < kActorCount; ++k) {
    const Actor a = static_cast<Actor>(k);
    ActorEstimate& e = est.actors[k];
    e.actor = a;
    e.honest_baseline = HonestBaseline(s, a);
    e.defined = e.honest_baseline > 0.0;
    if (!e.defined) continue;
    e.analytic_rer = Rer(AnalyticRevenue(report, a), e.honest_baseline);
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const double published = static_cast<double>(runs[i].published);
      const double share =
          published > 0.0 ? ActorRevenue(runs[i], a) / published : 0.0;
      xs[i] = Rer(share, e.honest_baseline);
    }
    const MeanStderr m = Summarize(xs);
    e.mean_rer = m.mean;
    e.stderr_rer = m.stderr_;
  }

  for (std::size_t i = 0; i < runs.size(); ++i) {
    xs[i] = static_cast<double>(runs[i].withheld) / runs[i].rounds;
  }
  const MeanStderr w = Summarize(xs);
  est.withheld_rate_mean = w.mean;
  est.withheld_rate_stderr = w.stderr_;
  est.replica_tallies = std::move(runs);
  return est;
}

SimEstimate SimulateShareLevel(const Scenario& s, SimConfig cfg,
                               const PricePolicy& policy) {
  cfg.mode = SimMode::kShareLevel;
  return Simulate(s, cfg, policy);
}

SimEstimate Replicate(const Scenario& s, const SimConfig& cfg,
                      const PricePolicy& policy) {
  if (cfg.replicas < 2) {
    Fail(ErrorCode::kParameter, "replication needs at least 2 replicas");
  }
  return Simulate(s, cfg, policy);
}

}  // namespace bdslab
