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

#include "lowesa/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace lowesa {

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  throw std::logic_error("bad Pauli value");
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw std::invalid_argument(std::string("not a Pauli character: '") + c + "'");
  }
}

PauliString::PauliString(uint32_t n_qubits) : n(n_qubits) {
  if (n_qubits > max_qubits) {
    throw std::invalid_argument("PauliString supports at most 64 qubits, got " +
                                std::to_string(n_qubits));
  }
}

PauliString PauliString::from_text(std::string_view text) {
  int8_t sign = +1;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    sign = text.front() == '-' ? -1 : +1;
    text.remove_prefix(1);
  }
  PauliString p(static_cast<uint32_t>(text.size()));
  p.sign = sign;
  for (uint32_t q = 0; q < text.size(); ++q) {
    p.set_component(q, pauli_from_char(text[q]));
  }
  return p;
}

std::string PauliString::to_text() const {
  std::string s;
  s.reserve(n + 1);
  s.push_back(sign < 0 ? '-' : '+');
  for (uint32_t q = 0; q < n; ++q) {
    s.push_back(pauli_char(component_at(q)));
  }
  return s;
}

Pauli PauliString::component_at(uint32_t qubit) const {
  if (qubit >= n) {
    throw std::out_of_range("qubit " + std::to_string(qubit) + " out of range for n=" +
                            std::to_string(n));
  }
  const bool x = (x_mask >> qubit) & 1;
  const bool z = (z_mask >> qubit) & 1;
  if (x) return z ? Pauli::Y : Pauli::X;
  return z ? Pauli::Z : Pauli::I;
}

void PauliString::set_component(uint32_t qubit, Pauli p) {
  if (qubit >= n) {
    throw std::out_of_range("qubit " + std::to_string(qubit) + " out of range for n=" +
                            std::to_string(n));
  }
  const uint64_t bit = uint64_t{1} << qubit;
  const bool x = p == Pauli::X || p == Pauli::Y;
  const bool z = p == Pauli::Z || p == Pauli::Y;
  x_mask = x ? (x_mask | bit) : (x_mask & ~bit);
  z_mask = z ? (z_mask | bit) : (z_mask & ~bit);
}

uint32_t PauliString::weight() const {
  return static_cast<uint32_t>(std::popcount(x_mask | z_mask));
}

double zero_state_expectation(const PauliString& p) {
  // |0..0><0..0| overlaps only I and Z components.
  return p.x_mask == 0 ? static_cast<double>(p.sign) : 0.0;
}

LocalPauliNoise::LocalPauliNoise(double px, double py, double pz)
    : p_x(px), p_y(py), p_z(pz) {
  if (px < 0 || py < 0 || pz < 0 || px + py + pz > 1.0 + 1e-12) {
    throw std::invalid_argument("invalid Pauli error probabilities (" +
                                std::to_string(px) + ", " + std::to_string(py) +
                                ", " + std::to_string(pz) + ")");
  }
  q_x = 1.0 - 2.0 * (p_z + p_y);
  q_y = 1.0 - 2.0 * (p_z + p_x);
  q_z = 1.0 - 2.0 * (p_x + p_y);
}

ChannelFactor ChannelFactor::single(uint32_t q, double qx, double qy, double qz) {
  ChannelFactor f;
  f.qubits = {q, 0};
  f.arity = 1;
  f.eigen[0] = 1.0;
  f.eigen[1] = qx;
  f.eigen[2] = qy;
  f.eigen[3] = qz;
  return f;
}

ChannelFactor ChannelFactor::dephasing(uint32_t q, double p) {
  if (p < 0 || p > 1) throw std::invalid_argument("dephasing probability out of [0,1]");
  return single(q, 1.0 - 2.0 * p, 1.0 - 2.0 * p, 1.0);
}

ChannelFactor ChannelFactor::depolarizing(uint32_t q, double eta) {
  if (eta < 0 || eta > 1) throw std::invalid_argument("depolarizing rate out of [0,1]");
  return single(q, 1.0 - eta, 1.0 - eta, 1.0 - eta);
}

ChannelFactor ChannelFactor::two_qubit(uint32_t a, uint32_t b,
                                       const std::array<double, 16>& eigen) {
  ChannelFactor f;
  f.qubits = {a, b};
  f.arity = 2;
  f.eigen = eigen;
  return f;
}

void ChannelFactor::validate(uint32_t n) const {
  if (arity != 1 && arity != 2) throw std::invalid_argument("channel factor arity must be 1 or 2");
  for (uint8_t i = 0; i < arity; ++i) {
    if (qubits[i] >= n) {
      throw std::invalid_argument("channel factor qubit " + std::to_string(qubits[i]) +
                                  " out of range for n=" + std::to_string(n));
    }
  }
  if (arity == 2 && qubits[0] == qubits[1]) {
    throw std::invalid_argument("two-qubit channel factor needs distinct qubits");
  }
  const size_t entries = arity == 1 ? 4 : 16;
  if (eigen[0] != 1.0) {
    throw std::invalid_argument("channel factor must map the identity Pauli to exactly 1");
  }
  for (size_t i = 0; i < entries; ++i) {
    if (!(std::abs(eigen[i]) <= 1.0 + 1e-12)) {
      throw std::invalid_argument("channel eigenvalue out of [-1,1]");
    }
  }
}

void ChannelEigenvalueMap::validate(uint32_t n) const {
  for (const auto& f : factors) f.validate(n);
}

double channel_attenuation(const ChannelEigenvalueMap& m, const PauliString& p) {
  double result = 1.0;
  for (const auto& f : m.factors) {
    size_t idx = static_cast<size_t>(p.component_at(f.qubits[0]));
    if (f.arity == 2) {
      idx = idx * 4 + static_cast<size_t>(p.component_at(f.qubits[1]));
    }
    result *= f.eigen[idx];
  }
  return result;
}

}  // namespace lowesa
