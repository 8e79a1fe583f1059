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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lowesa {

/// Single-qubit Pauli operators. The numbering doubles as the base-4 digit
/// used to index the dense Pauli-basis vectors in the oracle.
enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// An n-qubit Hermitian Pauli operator with an overall sign, in binary
/// symplectic form. Per qubit the (x, z) bit pair encodes
/// (0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z. Supports up to 64 qubits.
///
/// The operator is unnormalized: conventions are chosen so that no
/// 2^(n/2) factors appear anywhere downstream.
struct PauliString {
  uint32_t n = 0;
  uint64_t x_mask = 0;
  uint64_t z_mask = 0;
  int8_t sign = +1;  // +1 or -1; Clifford conjugation never leaves {+1,-1}

  static constexpr uint32_t max_qubits = 64;

  PauliString() = default;
  explicit PauliString(uint32_t n_qubits);

  static PauliString identity(uint32_t n_qubits) { return PauliString(n_qubits); }

  /// Parses textual notation: optional leading '+'/'-', then one character
  /// per qubit from {I,X,Y,Z}, leftmost character = qubit 0. E.g. "-XIZ".
  static PauliString from_text(std::string_view text);
  std::string to_text() const;

  Pauli component_at(uint32_t qubit) const;
  void set_component(uint32_t qubit, Pauli p);

  bool is_identity() const { return x_mask == 0 && z_mask == 0; }
  /// Number of non-identity components.
  uint32_t weight() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
};

/// tr(P |0..0><0..0|) for the unnormalized signed Pauli: the sign if every
/// component is I or Z, otherwise 0.
double zero_state_expectation(const PauliString& p);

/// Single-qubit Pauli error probabilities together with the derived
/// transfer-matrix eigenvalues
///   q_x = 1 - 2(p_z + p_y),  q_y = 1 - 2(p_z + p_x),  q_z = 1 - 2(p_x + p_y).
/// The eigenvalues are computed once here and are the canonical
/// representation afterwards.
struct LocalPauliNoise {
  double p_x = 0, p_y = 0, p_z = 0;
  double q_x = 1, q_y = 1, q_z = 1;

  LocalPauliNoise() = default;  // noiseless
  LocalPauliNoise(double px, double py, double pz);

  static LocalPauliNoise dephasing(double p) { return {0.0, 0.0, p}; }

  bool is_noiseless() const { return p_x == 0 && p_y == 0 && p_z == 0; }
};

/// One local factor of a product Pauli channel: transfer eigenvalues indexed
/// by the Pauli on one or two qubits. The identity entry is always 1.
struct ChannelFactor {
  std::array<uint32_t, 2> qubits{};  // first `arity` entries are meaningful
  uint8_t arity = 1;
  std::array<double, 16> eigen{};  // 1q: index Pauli code; 2q: code_a*4+code_b

  static ChannelFactor single(uint32_t q, double qx, double qy, double qz);
  static ChannelFactor dephasing(uint32_t q, double p);
  /// Local depolarizing with rate eta: eigenvalue 1-eta on X, Y and Z.
  static ChannelFactor depolarizing(uint32_t q, double eta);
  static ChannelFactor two_qubit(uint32_t a, uint32_t b,
                                 const std::array<double, 16>& eigen);

  /// Throws std::invalid_argument on a malformed factor.
  void validate(uint32_t n) const;
};

/// A Pauli channel that is diagonal in the Pauli-transfer picture,
/// represented as a product of local factors on at most two qubits each.
struct ChannelEigenvalueMap {
  std::vector<ChannelFactor> factors;

  void validate(uint32_t n) const;
};

/// Product over factors of the eigenvalue selected by P restricted to each
/// factor's qubits. Always 1 on the identity Pauli; result lies in [-1, 1].
double channel_attenuation(const ChannelEigenvalueMap& m, const PauliString& p);

}  // namespace lowesa
