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

// Independent reference implementations used only by the tests. Nothing
// here calls into the library: formulas are restated in their literal
// unsimplified form and the quantities the library solves in closed form
// are recovered numerically.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

// Frozen reference values. The two tau values come from the grid argmax
// below (step 1e-6, refined by golden section). Everything else was
// evaluated at the exact optimum of the literal closed form in 50-digit
// arithmetic, with bisection for the price bounds.
inline constexpr double kCase1Tau = 0.08769337322482404;
inline constexpr double kCase2Tau = 0.09964024502905211;
inline constexpr double kCase1C1AtFull = 0.013379113126669935;
inline constexpr double kCase1C2AtFull = 0.00012025096037087563;
inline constexpr double kCase1BwhVictim = 0.13789474743356959;
inline constexpr double kCase1BwhAttacker = 0.18135981676316202;
inline constexpr double kTable3Analytic[2][5] = {
    {0.86302528788905313, 0.85734448930500272, 0.85169978675384184,
     0.84609083729154646, 0.8405173023047369},
    {0.82933984045919581, 0.82516138064632511, 0.82100300132757848,
     0.81686455809819103, 0.81274590793469652},
};
// Betrayer RER maximum at r = 0.2 over alpha in {0.01..0.49} and beta in
// {0.001..0.009} u {0.01..0.49}, attained at (0.49, 0.001).
inline constexpr double kFig4Max = 0.99940645536155586;
// Attacking-pool RER minimum at r = 1 on the default grid, at (0.49, 0.41).
inline constexpr double kAttackerMinAtFull = -0.059930828469944661;

inline double Attacker(double a, double b, double t) {
  return (1 - t) * a / (1 - t * a) + (b / (1 - t * a)) * (t * a / (b + t * a));
}
inline double Victim(double a, double b, double t) {
  return (b / (1 - t * a)) * (b / (b + t * a));
}
inline double Others(double a, double b, double t) {
  return (1 - a - b) / (1 - t * a);
}

// Closed form exactly as usually written, with the cancellation-prone
// numerator.
inline double TauLiteral(double a, double b) {
  return (b - a * b - std::sqrt(b * b - a * b * b - a * b * b * b)) /
         (-a + a * a + a * b);
}

inline double VictimTrade(double a, double b, double t, double p, double T) {
  const double pub = 1 - t * a + p;
  return ((b + p) / pub - T) * (b / (b + t * a));
}
inline double Treasury(double a, double b, double t, double p, double T) {
  const double pub = 1 - t * a + p;
  return (1 - t) * a / pub + ((b + p) / pub - T) * (t * a / (b + t * a));
}
inline double Betrayer(double a, double b, double t, double p, double T,
                       double ind) {
  return ind / p * T + ind / a * Treasury(a, b, t, p, T);
}
inline double Loyal(double a, double b, double t, double p, double T,
                    double ind) {
  return ind / a * Treasury(a, b, t, p, T);
}
inline double NoTrade(double a, double b, double t, double ind) {
  return ind / a * Attacker(a, b, t);
}

// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
inline double Bisect(const std::function<double(double)>& f, double lo,
                     double hi, double tol = 1e-12) {
  double flo = f(lo);
  for (int i = 0; i < 400 && hi - lo > tol * 1e-3; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double C1ByBisection(double a, double b, double t, double p) {
  return Bisect(
      [&](double T) { return VictimTrade(a, b, t, p, T) - Victim(a, b, t); },
      0.0, p);
}
inline double C2ByBisection(double a, double b, double t, double p) {
  return Bisect(
      [&](double T) {
        return Betrayer(a, b, t, p, T, p) - NoTrade(a, b, t, p);
      },
      0.0, p);
}

// Argmax over tau in [0, 1] on a uniform grid.
inline double TauByGrid(double a, double b, double step = 1e-6) {
  double best = -1, arg = 0;
  const auto n = static_cast<std::int64_t>(std::llround(1.0 / step));
  for (std::int64_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * step;
    const double v = Attacker(a, b, t);
    if (v > best) {
      best = v;
      arg = t;
    }
  }
  return arg;
}

// Betrayer RER at the victim's indifference price for membership r.
inline double BetrayerRer(double a, double b, double t, double r) {
  const double p = r * t * a;
  const double T = C1ByBisection(a, b, t, p);
  return Betrayer(a, b, t, p, T, p) / p - 1;
}

// Payoff of miner i under betrayal mask `mask`, priced at the victim's
// indifference price of the realized collective.
inline double MinerPayoff(double a, double b, double t,
                          const std::vector<double>& powers, std::uint32_t mask,
                          std::size_t i) {
  double ps = 0;
  for (std::size_t j = 0; j < powers.size(); ++j) {
    if (mask >> j & 1u) ps += powers[j];
  }
  if (ps == 0) return NoTrade(a, b, t, powers[i]);
  const double T = C1ByBisection(a, b, t, ps);
  return (mask >> i & 1u) ? Betrayer(a, b, t, ps, T, powers[i])
                          : Loyal(a, b, t, ps, T, powers[i]);
}

// Brute-force pure Nash equilibria: a profile survives if no single miner
// strictly gains by flipping.
inline std::vector<std::uint32_t> BruteNash(
    const std::function<double(std::uint32_t, std::size_t)>& payoff,
    std::size_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    bool stable = true;
    for (std::size_t i = 0; i < n && stable; ++i) {
      stable = payoff(m ^ (1u << i), i) <= payoff(m, i);
    }
    if (stable) out.push_back(m);
  }
  return out;
}

// Uniform (alpha, beta) in (0.01, 0.49)^2.
struct Draw {
  double alpha, beta;
};
inline Draw RandomDraw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.01, 0.49);
  const double a = u(rng);
  return {a, u(rng)};
}

}  // namespace oracle
