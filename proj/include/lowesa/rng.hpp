// Copyright 2026 The lowesa Authors
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

namespace lowesa {

/// splitmix64 finalizer. Bijective on 64-bit words; the basis of all
/// randomness in the project so results do not depend on the standard
/// library's distribution implementations.
constexpr uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Stateless counter-based stream: the value for (seed, counter) never
/// depends on evaluation order, so samplers stay deterministic under
/// parallel execution.
constexpr uint64_t counter_rng(uint64_t seed, uint64_t counter) {
  return mix64(mix64(seed) ^ (counter * 0xd1342543de82ef95ull + 1));
}

constexpr double unit_from_bits(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Small sequential generator for circuit construction and tests.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : state_(mix64(seed ^ 0x5851f42d4c957f2dull)) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  /// Uniform in [0, 1).
  double uniform() { return unit_from_bits(next_u64()); }

  /// Uniform in [0, bound).
  double uniform(double bound) { return uniform() * bound; }

  bool coin() { return next_u64() & 1; }

  /// Uniform integer in [0, k).
  uint64_t index(uint64_t k) { return next_u64() % k; }

 private:
  uint64_t state_;
};

}  // namespace lowesa
