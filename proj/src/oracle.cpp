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

#include "lowesa/oracle.hpp"

#include <cmath>
#include <numbers>

#include "lowesa/engine.hpp"
#include "lowesa/errors.hpp"

namespace lowesa {

PauliVector PauliVector::zero_state(uint32_t n) {
  if (n == 0 || n > max_qubits) {
    throw std::invalid_argument("dense oracle supports 1 to " +
                                std::to_string(max_qubits) + " qubits, got " +
                                std::to_string(n));
  }
  PauliVector v;
  v.n = n;
  v.coeff.assign(size_t{1} << (2 * n), 0.0);
  // |0..0><0..0| has component 2^(-n/2) on every index whose digits are all
  // I or Z.
  const double amp = std::pow(2.0, -0.5 * n);
  for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
    size_t idx = 0;
    for (uint32_t q = 0; q < n; ++q) {
      if ((bits >> q) & 1) idx |= size_t{3} << (2 * q);
    }
    v.coeff[idx] = amp;
  }
  return v;
}

void PauliVector::apply(const CliffordGate& g) {
  const ConjugationTables& t = conjugation_tables();
  const int k = static_cast<int>(g.kind);
  // Schroedinger update: new[i] = sign_i * old[perm(i)] where the adjoint
  // table gives U' P_i U = sign_i P_perm(i).
  if (gate_arity(g.kind) == 1) {
    const auto& table = t.adjoint1[k];
    const uint32_t q = g.qubits[0];
    const size_t stride = size_t{1} << (2 * q);
    const size_t total = coeff.size();
    for (size_t base = 0; base < total; base += stride * 4) {
      for (size_t off = 0; off < stride; ++off) {
        double in[4];
        for (int d = 0; d < 4; ++d) in[d] = coeff[base + off + stride * d];
        for (int d = 0; d < 4; ++d) {
          const Conj1& e = table[d];
          coeff[base + off + stride * d] = e.sign * in[static_cast<int>(e.p)];
        }
      }
    }
  } else {
    const auto& table = t.adjoint2[k - kTwoQubitKindBase];
    const uint32_t qa = g.qubits[0];
    const uint32_t qb = g.qubits[1];
    const size_t sa = size_t{1} << (2 * qa);
    const size_t sb = size_t{1} << (2 * qb);
    const size_t total = coeff.size();
    // Enumerate indices with both digits zero by skipping over them.
    std::vector<size_t> zeros;
    zeros.reserve(total / 16);
    for (size_t idx = 0; idx < total; ++idx) {
      if (((idx >> (2 * qa)) & 3) == 0 && ((idx >> (2 * qb)) & 3) == 0) {
        zeros.push_back(idx);
      }
    }
    for (size_t base : zeros) {
      double in[16];
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) in[a * 4 + b] = coeff[base + sa * a + sb * b];
      }
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          const Conj2& e = table[a * 4 + b];
          coeff[base + sa * a + sb * b] =
              e.sign * in[static_cast<int>(e.a) * 4 + static_cast<int>(e.b)];
        }
      }
    }
  }
}

void PauliVector::apply_rotation(uint32_t qubit, double theta,
                                 const LocalPauliNoise& noise) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const size_t stride = size_t{1} << (2 * qubit);
  const size_t total = coeff.size();
  for (size_t base = 0; base < total; base += stride * 4) {
    for (size_t off = 0; off < stride; ++off) {
      double& vx = coeff[base + off + stride * 1];
      double& vy = coeff[base + off + stride * 2];
      double& vz = coeff[base + off + stride * 3];
      const double nx = noise.q_x * (c * vx - s * vy);
      const double ny = noise.q_y * (s * vx + c * vy);
      vx = nx;
      vy = ny;
      vz *= noise.q_z;
    }
  }
}

void PauliVector::apply(const ChannelEigenvalueMap& m) {
  for (const auto& f : m.factors) {
    const size_t total = coeff.size();
    if (f.arity == 1) {
      const uint32_t q = f.qubits[0];
      for (size_t idx = 0; idx < total; ++idx) {
        coeff[idx] *= f.eigen[(idx >> (2 * q)) & 3];
      }
    } else {
      const uint32_t qa = f.qubits[0];
      const uint32_t qb = f.qubits[1];
      for (size_t idx = 0; idx < total; ++idx) {
        coeff[idx] *= f.eigen[((idx >> (2 * qa)) & 3) * 4 + ((idx >> (2 * qb)) & 3)];
      }
    }
  }
}

double PauliVector::expectation(const PauliString& obs) const {
  if (obs.n != n) throw std::invalid_argument("observable width mismatch");
  size_t idx = 0;
  for (uint32_t q = 0; q < n; ++q) {
    idx |= static_cast<size_t>(obs.component_at(q)) << (2 * q);
  }
  return obs.sign * std::pow(2.0, 0.5 * n) * coeff[idx];
}

double dense_simulate(const NoisyCircuit& c, const ParameterAssignment& theta,
                      const PauliString& obs) {
  validate_or_throw(c);
  if (theta.size() != c.param_dim()) {
    throw std::invalid_argument("parameter vector length does not match the circuit");
  }
  PauliVector v = PauliVector::zero_state(c.n);
  for (const auto& e : c.elements) {
    std::visit(
        [&](const auto& elem) {
          using T = std::decay_t<decltype(elem)>;
          if constexpr (std::is_same_v<T, CliffordGate>) {
            v.apply(elem);
          } else if constexpr (std::is_same_v<T, ParamRotation>) {
            v.apply_rotation(elem.qubit, theta[elem.slot], elem.noise);
          } else {
            v.apply(elem);
          }
        },
        e);
  }
  return v.expectation(obs);
}

SurrogateSeries exact_series(const NoisyCircuit& c, const PauliString& obs,
                             uint64_t path_budget) {
  const uint32_t m = c.rotation_count();
  return backpropagate(c, obs, m, /*workers=*/1, path_budget).series;
}

double fourier_project(const std::function<double(const std::vector<double>&)>& f,
                       const FrequencyVector& omega, uint32_t dims, uint32_t grid) {
  if (grid < 4) throw std::invalid_argument("fourier projection needs grid >= 4");
  if (!omega.entries.empty() && omega.entries.back().first >= dims) {
    throw std::invalid_argument("frequency index out of range");
  }
  double points = 1;
  for (uint32_t j = 0; j < dims; ++j) {
    points *= grid;
    if (points > 1e9) {
      throw std::invalid_argument("fourier projection grid too large");
    }
  }

  const double step = 2.0 * std::numbers::pi / grid;
  std::vector<uint32_t> ticks(dims, 0);
  std::vector<double> theta(dims, 0.0);
  double acc = 0.0;
  uint64_t count = 0;
  while (true) {
    double phi = 1.0;
    for (const auto& [i, v] : omega.entries) {
      phi *= v > 0 ? std::cos(theta[i]) : std::sin(theta[i]);
    }
    acc += f(theta) * phi;
    ++count;
    uint32_t j = 0;
    for (; j < dims; ++j) {
      if (++ticks[j] < grid) {
        theta[j] = ticks[j] * step;
        break;
      }
      ticks[j] = 0;
      theta[j] = 0.0;
    }
    if (j == dims) break;
  }
  return std::ldexp(acc / static_cast<double>(count), omega.weight());
}

}  // namespace lowesa
