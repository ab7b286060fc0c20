// Copyright 2026 The PolyPA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace polypa {

// Seedable pseudorandom stream. Equal seeds give equal sequences; numbered
// child streams are derived from a master seed by index mixing so that
// workers can be handed independent, reproducible streams.
class RandomSource {
 public:
  // The engine gets a mixed seed so that nearby seeds start far apart.
  // Direct integer seeding is several times cheaper than std::seed_seq,
  // which matters for the many short child streams.
  explicit RandomSource(std::uint64_t seed)
      : seed_(seed), engine_(mix(seed ^ 0x5851f42d4c957f2dULL)) {}

  // Stream `index` of `master`. Nested derivation (child of a child) is how
  // per-batch, per-worker streams are named.
  static RandomSource child(std::uint64_t master, std::uint64_t index) {
    return RandomSource(derive_seed(master, index));
  }

  static RandomSource child(std::uint64_t master, std::uint64_t a,
                            std::uint64_t b) {
    return RandomSource(derive_seed(derive_seed(master, a), b));
  }

  RandomSource child(std::uint64_t index) const {
    return child(seed_, index);
  }

  static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix(mix(master) ^ mix(index + 0x632be59bd9b4e019ULL));
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  // Uniform real in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  // SplitMix64 finalizer.
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace polypa
