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

#include <functional>

#include "lowesa/circuit.hpp"
#include "lowesa/surrogate.hpp"

namespace lowesa {

/// Exact brute-force reference simulator. A state is the real vector of its
/// components in the normalized Pauli basis; the digit of index `idx` for
/// qubit q is (idx >> 2q) & 3 with I=0, X=1, Y=2, Z=3. All circuit elements
/// act as sparse updates; nothing is ever materialized as a 4^n x 4^n matrix.
struct PauliVector {
  uint32_t n = 0;
  std::vector<double> coeff;  // length 4^n

  static constexpr uint32_t max_qubits = 10;

  static PauliVector zero_state(uint32_t n);

  void apply(const CliffordGate& g);
  void apply_rotation(uint32_t qubit, double theta, const LocalPauliNoise& noise);
  void apply(const ChannelEigenvalueMap& m);

  /// sqrt(2^n) <<obs|rho>> — the expectation of the unnormalized signed Pauli.
  double expectation(const PauliString& obs) const;
};

/// tr(obs * U_theta[|0..0><0..0|]) through dense transfer-matrix simulation.
/// Ground truth for every comparison; n <= 10.
double dense_simulate(const NoisyCircuit& c, const ParameterAssignment& theta,
                      const PauliString& obs);

/// The full untruncated series: back-propagation with cutoff m, which is
/// exact by construction. Runs on the serial lane with a path budget;
/// exceeding it throws BudgetExceeded with no partial result.
SurrogateSeries exact_series(const NoisyCircuit& c, const PauliString& obs,
                             uint64_t path_budget = uint64_t{1} << 26);

/// Numeric Fourier projection of a point evaluator onto the monomial labeled
/// by omega: 2^|omega| times the mean of f * Phi_omega over the uniform
/// g^dims product grid. Exact for g >= 4 on circuits whose parameters each
/// enter at degree <= 1 (independently parameterized rotations).
double fourier_project(const std::function<double(const std::vector<double>&)>& f,
                       const FrequencyVector& omega, uint32_t dims, uint32_t grid = 8);

}  // namespace lowesa
