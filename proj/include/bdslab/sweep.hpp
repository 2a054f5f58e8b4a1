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

// Analytic RER surfaces over (alpha, beta) and participation ratios, with
// tau set to the optimal infiltration ratio and the equilibrium price.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bdslab/model.hpp"

namespace bdslab {

enum class Metric { kAttackerPoolRer, kBdsMinerRer, kVictimRer };

std::string_view MetricName(Metric m);           // "attacker", "bds", "victim"
std::optional<Metric> ParseMetric(std::string_view name);
std::string_view MetricActor(Metric m);          // CSV actor column

struct GridSpec {
  double alpha_min = 0.01, alpha_max = 0.49, alpha_step = 0.01;
  double beta_min = 0.01, beta_max = 0.49, beta_step = 0.01;
  std::vector<double> participations{0.2, 0.5, 1.0};
  Metric metric = Metric::kBdsMinerRer;

  // Throws kParameter unless 0 < min <= max < 0.5, step > 0 and every
  // participation lies in [0, 1] with at least one given.
  void Validate() const;
  std::vector<double> alphas() const;
  std::vector<double> betas() const;
};

struct SweepRow {
  double alpha = 0, beta = 0, tau = 0, participation = 0;
  double value = 0;
  // RevenueReport total minus 1.
  double conservation_residual = 0;
};

struct SkippedCell {
  double alpha = 0, beta = 0, participation = 0;
  std::string reason;
};

struct SweepResult {
  Metric metric = Metric::kBdsMinerRer;
  std::vector<SweepRow> rows;  // alpha-major, then beta, then participation
  std::vector<SkippedCell> skipped;
  std::optional<std::size_t> argmax;
  std::optional<std::size_t> argmin;
};

// Metric value for one scenario at the equilibrium price.
double MetricValue(const Scenario& s, Metric m);

SweepResult RunSweep(const GridSpec& grid, unsigned threads = 0);

// "# schema: bdslab.sweep.v1", header, then one row per evaluated cell.
std::string SweepCsv(const SweepResult& result);

struct MonotonicityReport {
  bool bds_miner_nonincreasing = false;
  bool attacker_pool_nonincreasing = false;
  // Largest absolute step between consecutive r samples, and whether it is
  // below kFlatThreshold.
  double bds_miner_max_step = 0;
  double attacker_pool_max_step = 0;
  bool bds_miner_flat = false;
  bool attacker_pool_flat = false;
};

inline constexpr double kFlatThreshold = 1e-9;

// RERs along the given r samples (sorted ascending, r = 0 skipped for the
// betrayer) for fixed alpha, beta and tau.
MonotonicityReport CheckMonotonicity(double alpha, double beta, double tau,
                                     std::span<const double> participations);

std::string FormatSig(double v, int digits = 6);

}  // namespace bdslab
