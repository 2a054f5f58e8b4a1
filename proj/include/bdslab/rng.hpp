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

// Pinned generators so simulator tallies are reproducible across builds and
// implementations.
//
//   SplitMix64  - seeding and stream derivation.
//   Xoshiro256StarStar - per-replica stream. Its state is filled with four
//       successive SplitMix64 outputs seeded with StreamSeed(master, index).
//   StreamSeed(master, index) = SplitMix64(master ^ SplitMix64(index + 1)
//       .next()).next(); one draw each.
//
// Uniform doubles take the top 53 bits: (x >> 11) * 2^-53, in [0, 1).

#include <array>
#include <cstdint>

namespace bdslab {

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

constexpr std::uint64_t StreamSeed(std::uint64_t master, std::uint64_t index) {
  const std::uint64_t salt = SplitMix64(index + 1).next();
  return SplitMix64(master ^ salt).next();
}

constexpr double ToUnit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256StarStar(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  constexpr result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  constexpr double uniform() { return ToUnit((*this)()); }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

// Randomly shifted golden-ratio Weyl sequence u_k = frac(shift + k * g),
// g = (sqrt(5) - 1) / 2, kept in 64-bit fixed point so it is exact.
class WeylSequence {
 public:
  explicit constexpr WeylSequence(std::uint64_t shift) : state_(shift) {}

  constexpr double next() {
    const double u = ToUnit(state_);
    state_ += 0x9E3779B97F4A7C15ull;
    return u;
  }

 private:
  std::uint64_t state_;
};

}  // namespace bdslab
