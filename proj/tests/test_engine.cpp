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

#include <cmath>
#include <numbers>

#include "lowesa/engine.hpp"
#include "lowesa/errors.hpp"
#include "lowesa/oracle.hpp"
#include "test_util.hpp"

using namespace lowesa;

namespace {

// Row-vector action of the transposed 4x4 mode matrices, the reference for
// mode_action: input Pauli j maps to the entries of row j.
std::array<std::array<double, 4>, 4> mode_matrix(int omega, const LocalPauliNoise& nz) {
  std::array<std::array<double, 4>, 4> d{};
  if (omega == 0) {
    d[0][0] = 1;
    d[3][3] = nz.q_z;
  } else if (omega == 1) {
    d[1][1] = nz.q_x;
    d[2][2] = nz.q_y;
  } else {
    d[1][2] = -nz.q_x;  // row X, column Y
    d[2][1] = nz.q_y;   // row Y, column X
  }
  return d;
}

NoisyCircuit h_rz_h(double dephasing_p) {
  NoisyCircuit c;
  c.n = 1;
  c.add_gate(GateKind::H, 0);
  c.add_rotation(0, "t0", LocalPauliNoise::dephasing(dephasing_p));
  c.add_gate(GateKind::H, 0);
  return c;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("mode actions match the transposed process-mode matrices") {
  SeededRng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const LocalPauliNoise nz = testing::random_noise(rng, 0.15);
    for (int omega : {0, 1, -1}) {
      const auto d = mode_matrix(omega, nz);
      for (int j = 0; j < 4; ++j) {
        const auto action = mode_action(omega, static_cast<Pauli>(j), nz);
        int nonzero = 0;
        for (int i = 0; i < 4; ++i) {
          if (d[j][i] == 0.0) continue;
          ++nonzero;
          REQUIRE(action.has_value());
          CHECK(action->pauli == static_cast<Pauli>(i));
          CHECK(action->factor == doctest::Approx(d[j][i]));
        }
        if (nonzero == 0) CHECK(!action.has_value());
        CHECK(nonzero <= 1);
      }
    }
  }
}

TEST_CASE("mode action worked entries") {
  const LocalPauliNoise nz(0.0, 0.05, 0.05);  // q_z = 0.9, q_x = 0.8
  CHECK(nz.q_z == doctest::Approx(0.9));
  const auto z0 = mode_action(0, Pauli::Z, nz);
  REQUIRE(z0.has_value());
  CHECK(z0->factor == doctest::Approx(0.9));
  CHECK(z0->pauli == Pauli::Z);

  LocalPauliNoise nz2(0.0, 0.1, 0.0);  // q_x = 1-2(0+0.1) = 0.8
  const auto xm = mode_action(-1, Pauli::X, nz2);
  REQUIRE(xm.has_value());
  CHECK(xm->factor == doctest::Approx(-0.8));
  CHECK(xm->pauli == Pauli::Y);

  CHECK(!mode_action(1, Pauli::Z, nz).has_value());
  CHECK(!mode_action(1, Pauli::I, nz).has_value());
  CHECK(!mode_action(0, Pauli::X, nz).has_value());
  CHECK_THROWS_AS(mode_action(2, Pauli::X, nz), std::invalid_argument);
}

TEST_CASE("empty circuit: constant series") {
  NoisyCircuit c;
  c.n = 1;
  const auto r = backpropagate(c, PauliString::from_text("+Z"), 5);
  REQUIRE(r.series.terms.size() == 1);
  CHECK(r.series.terms.begin()->first == FrequencyVector::constant());
  CHECK(r.series.terms.begin()->second == 1.0);
  CHECK(r.stats.explored == 1);
  CHECK(r.stats.completed == 1);
  CHECK(r.stats.emitted == 1);
  CHECK(r.stats.theoretical == 1);
}

TEST_CASE("single dephased rotation between Hadamards") {
  const auto r = backpropagate(h_rz_h(0.1), PauliString::from_text("+Z"), 1);
  REQUIRE(r.series.terms.size() == 1);
  const auto& [omega, coeff] = *r.series.terms.begin();
  CHECK(omega == FrequencyVector::of({{0, 1}}));
  CHECK(coeff == doctest::Approx(0.8));
  // The -1 branch ends in Y, which has no overlap with |0><0|.
  CHECK(r.stats.explored == 2);
  CHECK(r.stats.completed == 2);
  CHECK(r.stats.emitted == 1);

  // Noiseless limit is cos(theta).
  const auto ideal = backpropagate(h_rz_h(0.0), PauliString::from_text("+Z"), 1);
  for (double theta : {0.0, 0.7, 2.4}) {
    CHECK(evaluate(ideal.series, {theta}) == doctest::Approx(std::cos(theta)));
  }
}

TEST_CASE("cutoff 0 annihilates an anticommuting frame") {
  NoisyCircuit c;
  c.n = 1;
  c.add_rotation(0, "t0");
  const auto r = backpropagate(c, PauliString::from_text("+X"), 0);
  CHECK(r.series.terms.empty());
  CHECK(r.stats.explored == 1);
  CHECK(r.stats.completed == 0);
}

TEST_CASE("two chained rotations: coefficients against the numeric projection") {
  const double p = 0.07;
  NoisyCircuit c;
  c.n = 1;
  c.add_gate(GateKind::H, 0);
  c.add_rotation(0, "a", LocalPauliNoise::dephasing(p));
  c.add_rotation(0, "b", LocalPauliNoise::dephasing(p));
  c.add_gate(GateKind::H, 0);
  const PauliString obs = PauliString::from_text("+Z");

  const auto r = backpropagate(c, obs, 2);
  CHECK(r.stats.explored == 4);
  CHECK(r.stats.completed == 4);
  CHECK(r.stats.emitted == 2);

  // (1-2p)^2 cos(a+b) at a grid of points, against the dense oracle.
  const double q = 1 - 2 * p;
  for (double a : {0.0, 0.9, 2.2}) {
    for (double b : {0.3, 1.7}) {
      CHECK(evaluate(r.series, {a, b}) == doctest::Approx(q * q * std::cos(a + b)));
      CHECK(dense_simulate(c, {a, b}, obs) ==
            doctest::Approx(evaluate(r.series, {a, b})));
    }
  }

  // Brute force over all 9 frequency vectors via the numeric projection.
  const auto f = [&](const std::vector<double>& theta) {
    return dense_simulate(c, theta, obs);
  };
  for (int va = -1; va <= 1; ++va) {
    for (int vb = -1; vb <= 1; ++vb) {
      FrequencyVector omega;
      if (va != 0) omega.push(0, static_cast<int8_t>(va));
      if (vb != 0) omega.push(1, static_cast<int8_t>(vb));
      const double projected = fourier_project(f, omega, 2);
      const auto it = r.series.terms.find(omega);
      const double stored = it == r.series.terms.end() ? 0.0 : it->second;
      CHECK(stored == doctest::Approx(projected).epsilon(1e-9));
    }
  }
}

TEST_CASE("monotone refinement in the cutoff") {
  SeededRng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    testing::RandomCircuitOptions opt;
    opt.n = 1 + static_cast<uint32_t>(rng.index(3));
    opt.rotations = 5;
    opt.channel_probability = 0.3;
    const NoisyCircuit c = testing::random_circuit(rng, opt);
    const PauliString obs = testing::random_nonidentity_pauli(rng, opt.n);
    SurrogateSeries prev;
    for (uint32_t cutoff = 0; cutoff <= opt.rotations; ++cutoff) {
      const SurrogateSeries cur = backpropagate(c, obs, cutoff).series;
      if (cutoff > 0) {
        const SurrogateSeries restricted = truncate(cur, cutoff - 1);
        CHECK(restricted.terms == prev.terms);
      }
      prev = cur;
    }
  }
}

TEST_CASE("saturation: beyond some cutoff the series stops changing") {
  SeededRng rng(101);
  testing::RandomCircuitOptions opt;
  opt.n = 2;
  opt.rotations = 6;
  const NoisyCircuit c = testing::random_circuit(rng, opt);
  const PauliString obs = testing::random_nonidentity_pauli(rng, 2);
  const SurrogateSeries full = backpropagate(c, obs, 6).series;
  uint32_t saturation = 6;
  for (uint32_t cutoff = 0; cutoff <= 6; ++cutoff) {
    if (backpropagate(c, obs, cutoff).series.terms == full.terms) {
      saturation = cutoff;
      break;
    }
  }
  for (uint32_t cutoff = saturation; cutoff <= 6; ++cutoff) {
    CHECK(backpropagate(c, obs, cutoff).series.terms == full.terms);
  }
}

TEST_CASE("pure dephasing contracts every coefficient by (1-2p)^weight") {
  SeededRng rng(55);
  testing::RandomCircuitOptions opt;
  opt.n = 3;
  opt.rotations = 6;
  opt.noiseless = true;
  const NoisyCircuit ideal = testing::random_circuit(rng, opt);
  const double p = 0.1;
  const NoisyCircuit noisy = with_rotation_noise(ideal, LocalPauliNoise::dephasing(p));
  const PauliString obs = testing::random_nonidentity_pauli(rng, 3);

  const SurrogateSeries s0 = backpropagate(ideal, obs, 6).series;
  const SurrogateSeries s1 = backpropagate(noisy, obs, 6).series;
  REQUIRE(s0.terms.size() == s1.terms.size());
  auto i0 = s0.terms.begin();
  auto i1 = s1.terms.begin();
  for (; i0 != s0.terms.end(); ++i0, ++i1) {
    CHECK(i0->first == i1->first);
    const double expected = std::pow(1 - 2 * p, i0->first.weight()) * i0->second;
    CHECK(i1->second == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("coefficient magnitudes obey the branch-factor product bound") {
  SeededRng rng(202);
  for (int trial = 0; trial < 5; ++trial) {
    testing::RandomCircuitOptions opt;
    opt.n = 3;
    opt.rotations = 6;
    opt.channel_probability = 0.25;
    const NoisyCircuit c = testing::random_circuit(rng, opt);
    const PauliString obs = testing::random_nonidentity_pauli(rng, 3);
    const auto noises = c.rotation_noises();
    const auto r = backpropagate(c, obs, 6);
    for (const auto& [omega, coeff] : r.series.terms) {
      double bound = 1.0;
      for (const auto& [i, v] : omega.entries) {
        (void)v;
        bound *= std::max(noises[i].q_x, noises[i].q_y);
      }
      CHECK(std::abs(coeff) <= bound + 1e-12);
      CHECK(std::abs(coeff) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("identical results for any worker count") {
  SeededRng rng(303);
  testing::RandomCircuitOptions opt;
  opt.n = 3;
  opt.rotations = 8;
  opt.channel_probability = 0.2;
  const NoisyCircuit c = testing::random_circuit(rng, opt);
  const PauliString obs = testing::random_nonidentity_pauli(rng, 3);
  const auto serial = backpropagate(c, obs, 5, 1);
  for (int workers : {2, 4, 8}) {
    const auto parallel = backpropagate(c, obs, 5, workers);
    CHECK(parallel.series.terms == serial.series.terms);  // bitwise
    CHECK(parallel.stats.explored == serial.stats.explored);
    CHECK(parallel.stats.completed == serial.stats.completed);
    CHECK(parallel.stats.emitted == serial.stats.emitted);
    CHECK(serialize(parallel.series) == serialize(serial.series));
  }
}

TEST_CASE("path statistics and the closed-form total") {
  bool saturated = false;
  CHECK(theoretical_path_count(2, 1, &saturated) == 5);
  CHECK(!saturated);
  CHECK(theoretical_path_count(0, 4) == 1);
  CHECK(theoretical_path_count(3, 10) == 27);  // sum over i<=3 of C(3,i)2^i = 3^3
  theoretical_path_count(64, 64, &saturated);
  CHECK(saturated);

  NoisyCircuit c;
  c.n = 1;
  const auto empty_stats = path_stats(c, PauliString::from_text("+Z"), 3);
  CHECK(empty_stats.explored == 1);
  CHECK(empty_stats.completed <= 1);
  CHECK(empty_stats.theoretical == 1);

  SeededRng rng(404);
  testing::RandomCircuitOptions opt;
  opt.n = 3;
  opt.rotations = 7;
  for (int trial = 0; trial < 5; ++trial) {
    const NoisyCircuit rc = testing::random_circuit(rng, opt);
    const PauliString obs = testing::random_nonidentity_pauli(rng, 3);
    for (uint32_t cutoff : {0u, 2u, 4u, 7u}) {
      const PathStats st = path_stats(rc, obs, cutoff);
      CHECK(st.explored <= (uint64_t{1} << cutoff));
      CHECK(st.explored <= st.theoretical);
      CHECK(st.emitted <= st.completed);
      CHECK(st.completed <= st.explored);
    }
  }
}

TEST_CASE("explored paths stay well below the theoretical total") {
  const NoisyCircuit c = with_rotation_noise(
      gen_benchmark(4, 2, 17, BenchmarkFamily::Fig3), LocalPauliNoise(0.01, 0.01, 0.01));
  PauliString obs(4);
  obs.set_component(1, Pauli::Z);
  const PathStats st = path_stats(c, obs, 4);
  CHECK(st.explored <= 16);
  CHECK(st.theoretical > 100 * st.explored);
}

TEST_CASE("path budget aborts without a partial result") {
  const NoisyCircuit c = gen_benchmark(3, 2, 9, BenchmarkFamily::Fig3);
  PauliString obs(3);
  obs.set_component(0, Pauli::X);
  CHECK_THROWS_AS(backpropagate(c, obs, 18, 1, 2), BudgetExceeded);
}

TEST_CASE("half-probability dephasing annihilates every branching path") {
  // p = 0.5 gives q_x = q_y = 0: both branch children carry a zero factor.
  NoisyCircuit c;
  c.n = 1;
  c.add_gate(GateKind::H, 0);
  c.add_rotation(0, "t", LocalPauliNoise::dephasing(0.5));
  c.add_gate(GateKind::H, 0);
  const auto r = backpropagate(c, PauliString::from_text("+Z"), 1);
  CHECK(r.series.terms.empty());
  CHECK(r.stats.explored == 2);
  CHECK(r.stats.completed == 0);
  CHECK(dense_simulate(c, {1.1}, PauliString::from_text("+Z")) == doctest::Approx(0.0));
}

TEST_CASE("observable width must match the circuit") {
  NoisyCircuit c;
  c.n = 2;
  CHECK_THROWS_AS(backpropagate(c, PauliString::from_text("+Z"), 1),
                  std::invalid_argument);
}

}  // TEST_SUITE
