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

#include "lowesa/clifford.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace lowesa {

namespace {

using cplx = std::complex<double>;

// Dense complex matrices of dimension 2 or 4, just big enough to generate
// and verify the conjugation tables.
struct Mat {
  int dim;
  std::array<cplx, 16> a{};

  cplx& at(int r, int c) { return a[r * dim + c]; }
  const cplx& at(int r, int c) const { return a[r * dim + c]; }
};

Mat mul(const Mat& lhs, const Mat& rhs) {
  Mat out{lhs.dim, {}};
  for (int r = 0; r < lhs.dim; ++r) {
    for (int c = 0; c < lhs.dim; ++c) {
      cplx acc = 0;
      for (int k = 0; k < lhs.dim; ++k) acc += lhs.at(r, k) * rhs.at(k, c);
      out.at(r, c) = acc;
    }
  }
  return out;
}

Mat dagger(const Mat& m) {
  Mat out{m.dim, {}};
  for (int r = 0; r < m.dim; ++r) {
    for (int c = 0; c < m.dim; ++c) out.at(r, c) = std::conj(m.at(c, r));
  }
  return out;
}

Mat kron(const Mat& lhs, const Mat& rhs) {
  Mat out{4, {}};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      for (int r2 = 0; r2 < 2; ++r2) {
        for (int c2 = 0; c2 < 2; ++c2) {
          out.at(r * 2 + r2, c * 2 + c2) = lhs.at(r, c) * rhs.at(r2, c2);
        }
      }
    }
  }
  return out;
}

bool approx_equal(const Mat& lhs, const Mat& rhs) {
  for (int i = 0; i < lhs.dim * lhs.dim; ++i) {
    if (std::abs(lhs.a[i] - rhs.a[i]) > 1e-9) return false;
  }
  return true;
}

Mat scaled(const Mat& m, double s) {
  Mat out = m;
  for (auto& v : out.a) v *= s;
  return out;
}

Mat pauli_matrix(Pauli p) {
  const cplx i{0, 1};
  switch (p) {
    case Pauli::I: return Mat{2, {1, 0, 0, 1}};
    case Pauli::X: return Mat{2, {0, 1, 1, 0}};
    case Pauli::Y: return Mat{2, {0, -i, i, 0}};
    case Pauli::Z: return Mat{2, {1, 0, 0, -1}};
  }
  throw std::logic_error("bad Pauli");
}

Mat gate_matrix(GateKind k) {
  const cplx i{0, 1};
  const double s = 1.0 / std::sqrt(2.0);
  switch (k) {
    case GateKind::H: return Mat{2, {s, s, s, -s}};
    case GateKind::S: return Mat{2, {1, 0, 0, i}};
    case GateKind::Sdg: return Mat{2, {1, 0, 0, -i}};
    case GateKind::X: return pauli_matrix(Pauli::X);
    case GateKind::Y: return pauli_matrix(Pauli::Y);
    case GateKind::Z: return pauli_matrix(Pauli::Z);
    // Two-qubit matrices act on |ab>, first qubit = most significant bit.
    case GateKind::CX:
      return Mat{4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}};
    case GateKind::CZ:
      return Mat{4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1}};
    case GateKind::SWAP:
      return Mat{4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1}};
  }
  throw std::logic_error("bad gate kind");
}

// Identifies M as sign * (Pauli pair); throws if M is not a signed Pauli,
// which cannot happen for conjugation by the gates above.
Conj1 identify1(const Mat& m) {
  for (int c = 0; c < 4; ++c) {
    const Mat p = pauli_matrix(static_cast<Pauli>(c));
    for (int sign : {+1, -1}) {
      if (approx_equal(m, scaled(p, sign))) {
        return Conj1{static_cast<Pauli>(c), static_cast<int8_t>(sign)};
      }
    }
  }
  throw std::logic_error("conjugation result is not a signed Pauli");
}

Conj2 identify2(const Mat& m) {
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Mat p = kron(pauli_matrix(static_cast<Pauli>(a)),
                         pauli_matrix(static_cast<Pauli>(b)));
      for (int sign : {+1, -1}) {
        if (approx_equal(m, scaled(p, sign))) {
          return Conj2{static_cast<Pauli>(a), static_cast<Pauli>(b),
                       static_cast<int8_t>(sign)};
        }
      }
    }
  }
  throw std::logic_error("conjugation result is not a signed Pauli pair");
}

constexpr std::string_view kGateNames[kGateKindCount] = {
    "H", "S", "SDG", "X", "Y", "Z", "CX", "CZ", "SWAP"};

}  // namespace

std::string_view gate_name(GateKind k) { return kGateNames[static_cast<int>(k)]; }

GateKind gate_kind_from_name(std::string_view name) {
  for (int i = 0; i < kGateKindCount; ++i) {
    if (kGateNames[i] == name) return static_cast<GateKind>(i);
  }
  throw std::invalid_argument("unknown gate mnemonic: " + std::string(name));
}

CliffordGate CliffordGate::one(GateKind k, uint32_t q) {
  if (gate_arity(k) != 1) throw std::invalid_argument("gate kind needs two qubits");
  return CliffordGate{k, {q, 0}};
}

CliffordGate CliffordGate::two(GateKind k, uint32_t a, uint32_t b) {
  if (gate_arity(k) != 2) throw std::invalid_argument("gate kind takes one qubit");
  if (a == b) throw std::invalid_argument("two-qubit gate needs distinct qubits");
  return CliffordGate{k, {a, b}};
}

void CliffordGate::validate(uint32_t n) const {
  const int arity = gate_arity(kind);
  for (int i = 0; i < arity; ++i) {
    if (qubits[i] >= n) {
      throw std::invalid_argument("gate qubit " + std::to_string(qubits[i]) +
                                  " out of range for n=" + std::to_string(n));
    }
  }
  if (arity == 2 && qubits[0] == qubits[1]) {
    throw std::invalid_argument("two-qubit gate needs distinct qubits");
  }
}

ConjugationTables build_lookup_tables() {
  ConjugationTables t;
  for (int k = 0; k < kTwoQubitKindBase; ++k) {
    const Mat u = gate_matrix(static_cast<GateKind>(k));
    const Mat ud = dagger(u);
    for (int c = 0; c < 4; ++c) {
      const Mat p = pauli_matrix(static_cast<Pauli>(c));
      t.adjoint1[k][c] = identify1(mul(mul(ud, p), u));
      t.forward1[k][c] = identify1(mul(mul(u, p), ud));
    }
  }
  for (int k = kTwoQubitKindBase; k < kGateKindCount; ++k) {
    const Mat u = gate_matrix(static_cast<GateKind>(k));
    const Mat ud = dagger(u);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const Mat p = kron(pauli_matrix(static_cast<Pauli>(a)),
                           pauli_matrix(static_cast<Pauli>(b)));
        t.adjoint2[k - kTwoQubitKindBase][a * 4 + b] = identify2(mul(mul(ud, p), u));
        t.forward2[k - kTwoQubitKindBase][a * 4 + b] = identify2(mul(mul(u, p), ud));
      }
    }
  }
  return t;
}

const ConjugationTables& conjugation_tables() {
  static const ConjugationTables tables = build_lookup_tables();
  return tables;
}

namespace {

template <bool kAdjoint>
PauliString apply_gate(const CliffordGate& g, PauliString p) {
  const ConjugationTables& t = conjugation_tables();
  const int k = static_cast<int>(g.kind);
  if (gate_arity(g.kind) == 1) {
    const auto& table = kAdjoint ? t.adjoint1[k] : t.forward1[k];
    const Pauli in = p.component_at(g.qubits[0]);
    const Conj1& e = table[static_cast<int>(in)];
    p.set_component(g.qubits[0], e.p);
    p.sign = static_cast<int8_t>(p.sign * e.sign);
  } else {
    const auto& table =
        kAdjoint ? t.adjoint2[k - kTwoQubitKindBase] : t.forward2[k - kTwoQubitKindBase];
    const Pauli a = p.component_at(g.qubits[0]);
    const Pauli b = p.component_at(g.qubits[1]);
    const Conj2& e = table[static_cast<int>(a) * 4 + static_cast<int>(b)];
    p.set_component(g.qubits[0], e.a);
    p.set_component(g.qubits[1], e.b);
    p.sign = static_cast<int8_t>(p.sign * e.sign);
  }
  return p;
}

}  // namespace

PauliString conjugate_adjoint(const CliffordGate& g, PauliString p) {
  return apply_gate<true>(g, p);
}

PauliString conjugate_adjoint(std::span<const CliffordGate> layer, PauliString p) {
  for (auto it = layer.rbegin(); it != layer.rend(); ++it) {
    p = apply_gate<true>(*it, p);
  }
  return p;
}

PauliString conjugate(const CliffordGate& g, PauliString p) {
  return apply_gate<false>(g, p);
}

PauliString conjugate(std::span<const CliffordGate> layer, PauliString p) {
  for (const auto& g : layer) {
    p = apply_gate<false>(g, p);
  }
  return p;
}

}  // namespace lowesa
