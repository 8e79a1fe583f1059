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
#include <span>
#include <string_view>
#include <vector>

#include "lowesa/pauli.hpp"

namespace lowesa {

/// The fixed primitive gate alphabet. Generates the Clifford group; circuits
/// using other Cliffords must be pre-decomposed.
enum class GateKind : uint8_t { H = 0, S, Sdg, X, Y, Z, CX, CZ, SWAP };

inline constexpr int kGateKindCount = 9;
inline constexpr int kTwoQubitKindBase = 6;  // CX, CZ, SWAP

constexpr int gate_arity(GateKind k) {
  return static_cast<int>(k) < kTwoQubitKindBase ? 1 : 2;
}

std::string_view gate_name(GateKind k);
GateKind gate_kind_from_name(std::string_view name);

struct CliffordGate {
  GateKind kind = GateKind::H;
  std::array<uint32_t, 2> qubits{};  // first gate_arity(kind) entries used

  static CliffordGate one(GateKind k, uint32_t q);
  static CliffordGate two(GateKind k, uint32_t a, uint32_t b);

  void validate(uint32_t n) const;
};

using CliffordLayer = std::vector<CliffordGate>;

struct Conj1 {
  Pauli p;
  int8_t sign;
};
struct Conj2 {
  Pauli a, b;
  int8_t sign;
};

/// Conjugation lookup tables for every gate kind: adjoint entries are
/// U' P U (the Heisenberg update), forward entries are U P U'. Generated at
/// first use from the explicit 2x2 / 4x4 gate unitaries, never hand-typed.
struct ConjugationTables {
  // 1-qubit kinds indexed by GateKind, entry indexed by Pauli code.
  std::array<std::array<Conj1, 4>, kTwoQubitKindBase> adjoint1{};
  std::array<std::array<Conj1, 4>, kTwoQubitKindBase> forward1{};
  // 2-qubit kinds indexed by GateKind - kTwoQubitKindBase, entry indexed by
  // code(first qubit)*4 + code(second qubit).
  std::array<std::array<Conj2, 16>, 3> adjoint2{};
  std::array<std::array<Conj2, 16>, 3> forward2{};
};

/// Builds the tables from matrix definitions. Exposed for direct inspection;
/// most callers want the shared instance from conjugation_tables().
ConjugationTables build_lookup_tables();

/// The shared, lazily built instance.
const ConjugationTables& conjugation_tables();

/// Heisenberg update C' P C for one gate. O(1) after mask extraction.
PauliString conjugate_adjoint(const CliffordGate& g, PauliString p);
/// C' P C for a whole layer: gates are applied in reverse list order, which
/// is the adjoint of the composite circuit-order unitary.
PauliString conjugate_adjoint(std::span<const CliffordGate> layer, PauliString p);

/// Forward conjugation C P C'; inverse of conjugate_adjoint.
PauliString conjugate(const CliffordGate& g, PauliString p);
PauliString conjugate(std::span<const CliffordGate> layer, PauliString p);

}  // namespace lowesa
