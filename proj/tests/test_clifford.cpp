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

#include <doctest.h>

#include <complex>
#include <vector>

#include "lowesa/clifford.hpp"
#include "test_util.hpp"

using namespace lowesa;

// Independent matrix arithmetic (kept separate from the implementation's
// generator on purpose): dense complex matrices, dimension 2 or 4.
namespace {

using cplx = std::complex<double>;

struct DMat {
  int dim;
  std::vector<cplx> a;

  static DMat zero(int d) { return {d, std::vector<cplx>(d * d)}; }
  cplx& at(int r, int c) { return a[r * dim + c]; }
  cplx at(int r, int c) const { return a[r * dim + c]; }
};

DMat mul(const DMat& x, const DMat& y) {
  DMat out = DMat::zero(x.dim);
  for (int r = 0; r < x.dim; ++r)
    for (int c = 0; c < x.dim; ++c)
      for (int k = 0; k < x.dim; ++k) out.at(r, c) += x.at(r, k) * y.at(k, c);
  return out;
}

DMat dag(const DMat& x) {
  DMat out = DMat::zero(x.dim);
  for (int r = 0; r < x.dim; ++r)
    for (int c = 0; c < x.dim; ++c) out.at(r, c) = std::conj(x.at(c, r));
  return out;
}

DMat kron2(const DMat& x, const DMat& y) {
  DMat out = DMat::zero(4);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int r2 = 0; r2 < 2; ++r2)
        for (int c2 = 0; c2 < 2; ++c2)
          out.at(r * 2 + r2, c * 2 + c2) = x.at(r, c) * y.at(r2, c2);
  return out;
}

DMat pauli_dm(Pauli p) {
  const cplx i{0, 1};
  switch (p) {
    case Pauli::I: return {2, {1, 0, 0, 1}};
    case Pauli::X: return {2, {0, 1, 1, 0}};
    case Pauli::Y: return {2, {0, -i, i, 0}};
    case Pauli::Z: return {2, {1, 0, 0, -1}};
  }
  return DMat::zero(2);
}

DMat gate_dm(GateKind k) {
  const cplx i{0, 1};
  const double s = 1.0 / std::sqrt(2.0);
  switch (k) {
    case GateKind::H: return {2, {s, s, s, -s}};
    case GateKind::S: return {2, {1, 0, 0, i}};
    case GateKind::Sdg: return {2, {1, 0, 0, -i}};
    case GateKind::X: return pauli_dm(Pauli::X);
    case GateKind::Y: return pauli_dm(Pauli::Y);
    case GateKind::Z: return pauli_dm(Pauli::Z);
    case GateKind::CX: return {4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}};
    case GateKind::CZ: return {4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1}};
    case GateKind::SWAP: return {4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1}};
  }
  return DMat::zero(2);
}

bool matches(const DMat& m, const DMat& target, int sign) {
  for (size_t i = 0; i < m.a.size(); ++i) {
    if (std::abs(m.a[i] - double(sign) * target.a[i]) > 1e-9) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("clifford") {

TEST_CASE("every adjoint table entry equals the matrix-level conjugation") {
  const ConjugationTables& t = conjugation_tables();
  for (int k = 0; k < kTwoQubitKindBase; ++k) {
    const DMat u = gate_dm(static_cast<GateKind>(k));
    for (int c = 0; c < 4; ++c) {
      const DMat conj = mul(mul(dag(u), pauli_dm(static_cast<Pauli>(c))), u);
      const Conj1& e = t.adjoint1[k][c];
      CHECK_MESSAGE(matches(conj, pauli_dm(e.p), e.sign),
                    "kind=" << k << " pauli=" << c);
    }
  }
  for (int k = kTwoQubitKindBase; k < kGateKindCount; ++k) {
    const DMat u = gate_dm(static_cast<GateKind>(k));
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const DMat p =
            kron2(pauli_dm(static_cast<Pauli>(a)), pauli_dm(static_cast<Pauli>(b)));
        const DMat conj = mul(mul(dag(u), p), u);
        const Conj2& e = t.adjoint2[k - kTwoQubitKindBase][a * 4 + b];
        CHECK_MESSAGE(matches(conj, kron2(pauli_dm(e.a), pauli_dm(e.b)), e.sign),
                      "kind=" << k << " a=" << a << " b=" << b);
      }
    }
  }
}

TEST_CASE("every forward table entry equals the matrix-level conjugation") {
  const ConjugationTables& t = conjugation_tables();
  for (int k = 0; k < kTwoQubitKindBase; ++k) {
    const DMat u = gate_dm(static_cast<GateKind>(k));
    for (int c = 0; c < 4; ++c) {
      const DMat conj = mul(mul(u, pauli_dm(static_cast<Pauli>(c))), dag(u));
      const Conj1& e = t.forward1[k][c];
      CHECK_MESSAGE(matches(conj, pauli_dm(e.p), e.sign), "kind=" << k << " pauli=" << c);
    }
  }
  for (int k = kTwoQubitKindBase; k < kGateKindCount; ++k) {
    const DMat u = gate_dm(static_cast<GateKind>(k));
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const DMat p =
            kron2(pauli_dm(static_cast<Pauli>(a)), pauli_dm(static_cast<Pauli>(b)));
        const DMat conj = mul(mul(u, p), dag(u));
        const Conj2& e = t.forward2[k - kTwoQubitKindBase][a * 4 + b];
        CHECK_MESSAGE(matches(conj, kron2(pauli_dm(e.a), pauli_dm(e.b)), e.sign),
                      "kind=" << k << " a=" << a << " b=" << b);
      }
    }
  }
}

TEST_CASE("identity is a fixed point of every kind") {
  const ConjugationTables& t = conjugation_tables();
  for (int k = 0; k < kTwoQubitKindBase; ++k) {
    CHECK(t.adjoint1[k][0].p == Pauli::I);
    CHECK(t.adjoint1[k][0].sign == 1);
  }
  for (int k = 0; k < 3; ++k) {
    CHECK(t.adjoint2[k][0].a == Pauli::I);
    CHECK(t.adjoint2[k][0].b == Pauli::I);
    CHECK(t.adjoint2[k][0].sign == 1);
  }
}

TEST_CASE("textbook conjugations") {
  const PauliString z1 = PauliString::from_text("+Z");
  CHECK(conjugate_adjoint(CliffordGate::one(GateKind::H, 0), z1).to_text() == "+X");

  const PauliString x1 = PauliString::from_text("+X");
  CHECK(conjugate_adjoint(CliffordGate::one(GateKind::S, 0), x1).to_text() == "-Y");

  const PauliString xi = PauliString::from_text("+XI");
  CHECK(conjugate_adjoint(CliffordGate::two(GateKind::CX, 0, 1), xi).to_text() == "+XX");
  CHECK(conjugate_adjoint(CliffordGate::two(GateKind::CZ, 0, 1), xi).to_text() == "+XZ");
}

TEST_CASE("layer adjoint applies gates in reverse order") {
  // S then H on the same qubit: (HS)' Z (HS) = S' (H'ZH) S = S' X S = -Y.
  CliffordLayer layer{CliffordGate::one(GateKind::S, 0),
                      CliffordGate::one(GateKind::H, 0)};
  CHECK(conjugate_adjoint(layer, PauliString::from_text("+Z")).to_text() == "-Y");
}

TEST_CASE("forward and adjoint conjugation are inverse on random layers") {
  SeededRng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const uint32_t n = 2 + static_cast<uint32_t>(rng.index(4));
    CliffordLayer layer;
    for (int g = 0; g < 6; ++g) layer.push_back(testing::random_gate(rng, n));
    const PauliString p = testing::random_pauli(rng, n);
    const PauliString back = conjugate(layer, conjugate_adjoint(layer, p));
    CHECK(back == p);
    CHECK(std::abs(conjugate_adjoint(layer, p).sign) == 1);
  }
}

TEST_CASE("gate construction and validation") {
  CHECK_THROWS_AS(CliffordGate::two(GateKind::CX, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(CliffordGate::one(GateKind::CX, 0), std::invalid_argument);
  CHECK_THROWS_AS(CliffordGate::two(GateKind::H, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(CliffordGate::one(GateKind::H, 3).validate(2), std::invalid_argument);
  CHECK(gate_kind_from_name("SDG") == GateKind::Sdg);
  CHECK_THROWS_AS(gate_kind_from_name("T"), std::invalid_argument);
}

}  // TEST_SUITE
