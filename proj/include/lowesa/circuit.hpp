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

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "lowesa/clifford.hpp"
#include "lowesa/pauli.hpp"

namespace lowesa {

/// A parameterized z-rotation with its attached local Pauli noise. The noise
/// may differ per rotation (time-dependent noise).
struct ParamRotation {
  uint32_t qubit = 0;
  uint32_t slot = 0;  // parameter slot; shared slots correlate rotations
  LocalPauliNoise noise;
};

using CircuitElement = std::variant<CliffordGate, ParamRotation, ChannelEigenvalueMap>;

/// A noisy parameterized circuit applied to |0..0>: an ordered sequence of
/// Clifford gates, z-rotations and Pauli channels, in circuit order. A
/// channel element attenuates the Pauli frame exactly where it sits, which
/// makes the channel-vs-layer ordering explicit instead of a convention.
///
/// Rotations are numbered 0..m-1 by order of appearance; parameter slots are
/// assigned to names in first-appearance order, so the slot map is the
/// identity whenever no name is reused.
struct NoisyCircuit {
  uint32_t n = 0;
  std::vector<CircuitElement> elements;
  std::vector<std::string> param_names;  // slot -> name

  uint32_t param_dim() const { return static_cast<uint32_t>(param_names.size()); }
  uint32_t rotation_count() const;
  std::vector<uint32_t> rotation_slots() const;
  std::vector<LocalPauliNoise> rotation_noises() const;

  void add_gate(const CliffordGate& g) { elements.emplace_back(g); }
  void add_gate(GateKind k, uint32_t q) { elements.emplace_back(CliffordGate::one(k, q)); }
  void add_gate(GateKind k, uint32_t a, uint32_t b) {
    elements.emplace_back(CliffordGate::two(k, a, b));
  }
  /// Adds a rotation bound to the named parameter; returns its slot.
  uint32_t add_rotation(uint32_t qubit, const std::string& param_name,
                        const LocalPauliNoise& noise = {});
  void add_channel(ChannelEigenvalueMap m) { elements.emplace_back(std::move(m)); }
  void add_channel(const ChannelFactor& f) {
    elements.emplace_back(ChannelEigenvalueMap{{f}});
  }
};

struct ValidationReport {
  bool ok = true;
  bool injective = true;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
};

/// Checks all structural invariants: index ranges, probability ranges,
/// channel tables, contiguity of parameter slots. A non-injective parameter
/// map is legal but reported as a warning, since the error bounds only apply
/// to independently parameterized rotations.
ValidationReport validate(const NoisyCircuit& c);
void validate_or_throw(const NoisyCircuit& c);

/// Copy of the circuit with every rotation's noise replaced.
NoisyCircuit with_rotation_noise(NoisyCircuit c, const LocalPauliNoise& noise);

enum class BenchmarkFamily { Fig2, Fig3 };

BenchmarkFamily benchmark_family_from_name(std::string_view name);
std::string_view benchmark_family_name(BenchmarkFamily f);

/// Deterministic benchmark circuit generators on a near-square 2D grid
/// (row-major, nearest-neighbor edges, CX control = lower index; n=1 has no
/// entanglers).
///   fig2: per layer and qubit, coin-flipped H, Rz, coin-flipped X,
///         coin-flipped H, then a CX on every grid edge.
///   fig3: per layer and qubit, Rz-Rx-Rz with Rx lowered to H.Rz.H (the
///         noise stays on the Rz), then each grid CX with probability 1/2.
/// All rotations are independently parameterized; rotations carry no noise
/// (attach one with with_rotation_noise).
NoisyCircuit gen_benchmark(uint32_t n, uint32_t layers, uint64_t seed,
                           BenchmarkFamily family);

/// Grid edges used by the generators, exposed for tests.
std::vector<std::pair<uint32_t, uint32_t>> grid_edges(uint32_t n);

/// Line-oriented circuit text format; '#' starts a comment.
///
///   QUBITS 10
///   NOISE_DEFAULT ROT 0.01 0.01 0.01   # p_x p_y p_z for every rotation
///   CLIFF H 0
///   RZ 0 theta0                        # qubit, parameter name
///   RZ 1 theta0 0.0 0.0 0.1            # optional per-rotation p_x p_y p_z
///   CHANNEL DEPOL 1 0.02
///   CHANNEL PAULI 0 0.9 0.9 1.0
///   CHANNEL PAULI2 0 1 <16 eigenvalues>
///   CLIFF CX 0 1
///
/// Parameter names map to slots in first-appearance order; reusing a name
/// shares the slot. Channels act exactly where they appear.
NoisyCircuit parse_circuit(std::istream& in);
NoisyCircuit parse_circuit(const std::string& text);
NoisyCircuit parse_circuit_file(const std::string& path);

std::string write_circuit(const NoisyCircuit& c);
void write_circuit_file(const NoisyCircuit& c, const std::string& path);

}  // namespace lowesa
