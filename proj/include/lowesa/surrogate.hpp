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

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lowesa/pauli.hpp"

namespace lowesa {

using ParameterAssignment = std::vector<double>;

/// Sparse frequency vector over rotation indices: strictly ascending
/// (index, value) entries with value in {+1,-1}; rotations not listed
/// contribute the constant monomial. The weight |omega| is the entry count.
struct FrequencyVector {
  std::vector<std::pair<uint32_t, int8_t>> entries;

  uint32_t weight() const { return static_cast<uint32_t>(entries.size()); }

  /// Appends an entry; the index must exceed the current last index.
  void push(uint32_t index, int8_t value);

  static FrequencyVector constant() { return {}; }
  static FrequencyVector of(std::initializer_list<std::pair<uint32_t, int8_t>> e);

  std::string to_text() const;  // "0:+1 3:-1", or "-" for the constant term

  friend auto operator<=>(const FrequencyVector&, const FrequencyVector&) = default;
};

/// Rotations whose parameter was bound to a fixed angle keep this sentinel
/// in the slot map; no term entry can reference them afterwards.
inline constexpr uint32_t kBoundSlot = UINT32_MAX;

struct SeriesMeta {
  uint32_t n = 0;        // qubits
  uint32_t m = 0;        // rotations of the originating circuit
  uint32_t cutoff = 0;   // weight cutoff the series was built with
  uint32_t param_dim = 0;
  std::vector<uint32_t> slot_map;  // rotation index -> slot (size m)
  std::string observable;

  /// True when no two live rotations share a parameter slot; the condition
  /// under which the trigonometric monomials are orthogonal.
  bool injective() const;
};

/// The truncated trigonometric series
///   g(theta) = sum_omega d_omega * prod_(i,v) cos/sin(theta[slot(i)]).
/// Only nonzero coefficients are stored; the map keeps keys in a canonical
/// order so iteration and serialization are deterministic.
struct SurrogateSeries {
  SeriesMeta meta;
  std::map<FrequencyVector, double> terms;

  /// Throws std::logic_error on a duplicate key, std::invalid_argument on a
  /// key above the cutoff or out of range.
  void insert_term(FrequencyVector omega, double coeff);
};

/// Coefficients with magnitude below this after merges are dropped as
/// floating-point dust.
inline constexpr double kCoefficientDust = 1e-15;

/// Evaluates the series; cost O(#terms * avg weight), independent of qubit
/// count and circuit depth.
double evaluate(const SurrogateSeries& s, const ParameterAssignment& theta);

/// Folds fixed slots into the coefficients: every cos/sin factor on a fixed
/// slot is evaluated numerically, terms whose remaining parts coincide are
/// summed, and the surviving slots are renumbered compactly in ascending
/// order. Commutes with evaluate.
SurrogateSeries bind_fixed(const SurrogateSeries& s,
                           const std::map<uint32_t, double>& fixed);

/// Sub-map of terms with weight <= cutoff.
SurrogateSeries truncate(const SurrogateSeries& s, uint32_t cutoff);

/// L2 distance over the parameter torus computed from coefficients,
///   sqrt( sum_omega 2^-|omega| (a_omega - b_omega)^2 ),
/// valid only for injective parameter maps (refuses otherwise, since the
/// monomials are no longer orthogonal under sharing).
double parseval_distance(const SurrogateSeries& a, const SurrogateSeries& b);

struct MonteCarloEstimate {
  double distance = 0;   // sqrt(mean of (f-g)^2)
  double std_error = 0;  // jackknife standard error of the distance estimate
};

/// Monte-Carlo estimate of the average L2 distance between two point
/// evaluators over theta uniform on [0,2pi)^dims. Sampling is counter-based
/// on (seed, sample, dim), so the result is identical for any worker count.
MonteCarloEstimate monte_carlo_distance(
    const std::function<double(const std::vector<double>&)>& f,
    const std::function<double(const std::vector<double>&)>& g, uint32_t dims,
    uint64_t samples, uint64_t seed, int workers = 1);

/// Worst-case noise figures over the rotations of a circuit.
struct NoiseSummary {
  double p_prime = 0;    // min over rotations of min(p_x, p_y)
  double p_prime_z = 0;  // min over rotations of p_z
  double eta = 0;        // optional per-primitive depolarizing rate
};

NoiseSummary summarize_rotation_noise(const std::vector<LocalPauliNoise>& noises);

struct BoundPair {
  double tight = 0;        // |1 - 2p' - 2p'_z|^(l+1) * (1-eta)^(l+1)
  double exponential = 0;  // exp(-2 (p' + p'_z) l)
};

/// Truncation error bounds for cutoff l. Requires p' > 0 or p'_z > 0;
/// otherwise throws ("bound vacuous").
BoundPair theoretical_bound(uint32_t cutoff, const NoiseSummary& noise);

struct ChebyshevTail {
  double threshold = 0;    // (1+k) * exp(-2 (p' + p'_z) l)
  double probability = 0;  // 1 / k^2
};

/// Tail bound for circuits with fixed random angles: the distance exceeds
/// `threshold` with probability at most `probability`. Requires k >= 1.
ChebyshevTail chebyshev_tail(double k, uint32_t cutoff, const NoiseSummary& noise);

/// Text format:
///   N <qubits>
///   M <rotations>
///   CUTOFF <l>
///   PARAMS <dimension>
///   OBS <observable description>
///   SLOTS <m slot indices>          # only when the map is not injective
///   omega 0:+1 3:-1 coeff <value>   # "-" instead of entries = constant term
/// Coefficients carry 17 significant digits; the round trip is lossless.
std::string serialize(const SurrogateSeries& s);
SurrogateSeries deserialize(const std::string& text);

/// Weighted sum of series over the same circuit and cutoff; coefficients on
/// equal keys add, dust is dropped.
SurrogateSeries merge_weighted(
    const std::vector<std::pair<double, SurrogateSeries>>& parts,
    const std::string& observable_desc);

}  // namespace lowesa
