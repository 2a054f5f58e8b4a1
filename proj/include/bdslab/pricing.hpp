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

#include "bdslab/model.hpp"

namespace bdslab {

// Feasible trade-price interval for a betraying power p. `lower` is the
// least price the betrayer accepts over staying loyal (C2), `upper` the
// most the victim pays before losing against the no-trade baseline (C1).
struct PriceBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool feasible = false;

  double midpoint() const noexcept { return 0.5 * (lower + upper); }
};

// Each of these requires 0 < p <= tau * alpha; violations throw kParameter,
// tau * alpha == 0 throws kDegenerate.
double C1UpperBound(const Scenario& s, double p);
double C2LowerBound(const Scenario& s, double p);

// Additionally requires tau * alpha < beta (kInfeasibleScenario).
PriceBounds ComputePriceBounds(const Scenario& s, double p);

// Proposer-optimal price in the take-it-or-leave-it pricing game: the upper
// end of the feasible interval.
double EquilibriumPrice(const Scenario& s, double p);

// Price the policy selects for collective power p. p == 0 means there is
// no trade; the price is then 0 and only kFixed with a positive value fails.
double ResolvePrice(const Scenario& s, double p, const PricePolicy& policy);

}  // namespace bdslab
