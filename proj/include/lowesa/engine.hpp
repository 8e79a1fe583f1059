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
#include <optional>

#include "lowesa/circuit.hpp"
#include "lowesa/surrogate.hpp"

namespace lowesa {

/// The single-qubit action of a process mode on the back-propagated Pauli
/// frame: a scaled replacement Pauli, or annihilation (nullopt).
struct ModeAction {
  double factor;
  Pauli pauli;
};

/// Heisenberg-picture action of the mode labelled omega on a local Pauli:
///   omega =  0:  I -> (1, I),     Z -> (q_z, Z),   X/Y annihilated
///   omega = +1:  X -> (q_x, X),   Y -> (q_y, Y),   I/Z annihilated
///   omega = -1:  X -> (-q_x, Y),  Y -> (q_y, X),   I/Z annihilated
std::optional<ModeAction> mode_action(int omega, Pauli p, const LocalPauliNoise& noise);

/// One node of the depth-first back-propagation: the current Pauli frame,
/// the accumulated real factor (|factor| <= 1), the branch weight so far and
/// the position in the reversed element walk.
struct TraversalState {
  PauliString pauli;
  double factor = 1.0;
  uint32_t weight = 0;
  size_t next = 0;  // index into the reversed element sequence
  // Branch choices so far, innermost last (rotation indices descending).
  std::vector<std::pair<uint32_t, int8_t>> choices;
};

struct PathStats {
  uint64_t explored = 0;   // terminated paths, annihilated or completed
  uint64_t completed = 0;  // paths that reached the front of the circuit
  uint64_t emitted = 0;    // completed paths with a nonzero coefficient
  uint64_t theoretical = 0;  // sum_{i<=l} C(m,i) 2^i
  bool saturated = false;    // theoretical count clamped at uint64 max
};

struct BackpropResult {
  SurrogateSeries series;
  PathStats stats;
};

/// Back-propagates the observable through the circuit and returns exactly
/// the terms {omega : |omega| <= cutoff, d_omega != 0}. Elements are walked
/// in reverse circuit order: the Pauli frame is conjugated through Clifford
/// gates and attenuated through channels before each rotation qubit is
/// inspected. Rotations whose frame component is X or Y split the path in
/// two (+1 explored first); a split past the cutoff annihilates the path.
/// Each surviving path yields a distinct frequency vector, so the merge is
/// insert-only and the result is identical for any worker count.
///
/// A nonzero path_budget aborts with BudgetExceeded once more than that many
/// paths terminate (enforced on the serial lane; budgeted runs are serial).
BackpropResult backpropagate(const NoisyCircuit& c, const PauliString& obs,
                             uint32_t cutoff, int workers = 1,
                             uint64_t path_budget = 0);

PathStats path_stats(const NoisyCircuit& c, const PauliString& obs, uint32_t cutoff);

/// sum_{i<=min(l,m)} C(m,i) 2^i in exact integer arithmetic, clamped to
/// uint64 max on overflow (reported through *saturated).
uint64_t theoretical_path_count(uint32_t m, uint32_t cutoff, bool* saturated = nullptr);

}  // namespace lowesa
