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

// Built-in reproduction of the published betrayer RER table: two attack
// cases drawn from a month of Bitcoin pool power shares, five participation
// ratios each, analytic and simulated.

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "bdslab/montecarlo.hpp"

namespace bdslab {

struct AttackCase {
  std::string_view name;
  double alpha;
  double beta;
};

inline constexpr std::array<AttackCase, 2> kTable3Cases{{
    {"Foundry USA (18%) attacks AntPool (15%)", 0.18, 0.15},
    {"Poolin (12%) attacks Foundry USA (18%)", 0.12, 0.18},
}};

inline constexpr std::array<double, 5> kTable3Participations{0.2, 0.4, 0.6,
                                                             0.8, 1.0};

// Published betrayer RERs as fractions, [case][participation].
inline constexpr double kTable3Theory[2][5] = {
    {0.8636, 0.8580, 0.8523, 0.8467, 0.8411},
    {0.8298, 0.8256, 0.8214, 0.8173, 0.8132},
};
inline constexpr double kTable3Simulated[2][5] = {
    {0.8636, 0.8577, 0.8524, 0.8460, 0.8403},
    {0.8295, 0.8266, 0.8213, 0.8161, 0.8124},
};

// Absolute tolerances on RER fractions.
inline constexpr double kTable3AnalyticTolerance = 0.0015;
inline constexpr double kTable3SimulatedTolerance = 0.003;
inline constexpr double kTable3SigmaBound = 3.0;

struct Table3Options {
  bool analytic_only = false;
  SimConfig sim{};
};

struct Table3Cell {
  std::size_t case_index = 0;
  double participation = 0;
  double tau = 0;
  double published_theory = 0;
  double published_simulated = 0;
  double analytic = 0;
  bool analytic_pass = false;

  bool simulated = false;  // false with analytic_only
  double sim_mean = 0;
  double sim_stderr = 0;
  bool sim_within_sigma = false;
  bool sim_within_published = false;

  bool pass() const {
    return analytic_pass &&
           (!simulated || (sim_within_sigma && sim_within_published));
  }
};

// Ten cells in case-major order.
std::vector<Table3Cell> ReproduceTable3(const Table3Options& options);

}  // namespace bdslab
