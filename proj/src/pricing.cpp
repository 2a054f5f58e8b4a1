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

#include "bdslab/pricing.hpp"

#include <sstream>

#include "bdslab/error.hpp"

namespace bdslab {
namespace {

// Collective powers are often sums of individual splits; allow roundoff
// when they are meant to exhaust tau * alpha.
constexpr double kPowerSlack = 1e-12;

void RequireBetrayingPower(const Scenario& s, double p) {
  const double ta = s.infiltration();
  if (!(ta > 0.0)) {
    Fail(ErrorCode::kDegenerate,
         "tau*alpha = 0: without infiltration there is nothing to trade");
  }
  if (!(p > 0.0 && p <= ta * (1.0 + kPowerSlack))) {
    std::ostringstream msg;
    msg << "betraying power p = " << p << " must satisfy 0 < p <= tau*alpha = "
        << ta;
    Fail(ErrorCode::kParameter, msg.str());
  }
}

}  // namespace

double C1UpperBound(const Scenario& s, double p) {
  RequireBetrayingPower(s, p);
  const double keep = 1.0 - s.infiltration();
  return p * (keep - s.beta()) / ((keep + p) * keep);
}

double C2LowerBound(const Scenario& s, double p) {
  RequireBetrayingPower(s, p);
  const double a = s.alpha();
  const double b = s.beta();
  const double t = s.tau();
  const double ta = s.infiltration();
  const double keep = 1.0 - ta;
  const double bracket =
      p * (1.0 - t) * a + ta / (b + ta) * (p * b - p * keep);
  return (b + ta) / (b + ta - p * t) / (keep * (keep + p)) * (p / a) * bracket;
}

PriceBounds ComputePriceBounds(const Scenario& s, double p) {
  RequireBetrayingPower(s, p);
  s.RequireTradeChain();
  PriceBounds bounds;
  bounds.lower = C2LowerBound(s, p);
  bounds.upper = C1UpperBound(s, p);
  bounds.feasible = bounds.lower < bounds.upper;
  return bounds;
}

double EquilibriumPrice(const Scenario& s, double p) {
  const PriceBounds bounds = ComputePriceBounds(s, p);
  if (!bounds.feasible) {
    std::ostringstream msg;
    msg << "no feasible price: C2 bound " << bounds.lower
        << " >= C1 bound " << bounds.upper;
    Fail(ErrorCode::kInfeasibleScenario, msg.str());
  }
  return bounds.upper;
}

double ResolvePrice(const Scenario& s, double p, const PricePolicy& policy) {
  using Kind = PricePolicy::Kind;
  if (p == 0.0) {
    if (policy.kind == Kind::kFixed && policy.value != 0.0) {
      Fail(ErrorCode::kInfeasiblePrice,
           "a positive price needs a positive betraying power");
    }
    return 0.0;
  }
  switch (policy.kind) {
    case Kind::kEquilibrium:
      return EquilibriumPrice(s, p);
    case Kind::kZero:
      RequireBetrayingPower(s, p);
      return 0.0;
    case Kind::kFixed: {
      const double upper = C1UpperBound(s, p);
      if (!(policy.value >= 0.0 && policy.value <= upper)) {
        std::ostringstream msg;
        msg << "price " << policy.value << " outside [0, C1 bound " << upper
            << "]";
        Fail(ErrorCode::kInfeasiblePrice, msg.str());
      }
      return policy.value;
    }
    case Kind::kIntervalFraction: {
      if (!(policy.value >= 0.0 && policy.value <= 1.0)) {
        Fail(ErrorCode::kParameter, "interval fraction must lie in [0, 1]");
      }
      const PriceBounds bounds = ComputePriceBounds(s, p);
      if (!bounds.feasible) {
        Fail(ErrorCode::kInfeasibleScenario, "empty price interval");
      }
      return bounds.lower + policy.value * (bounds.upper - bounds.lower);
    }
  }
  Fail(ErrorCode::kParameter, "unknown price policy");
}

}  // namespace bdslab
