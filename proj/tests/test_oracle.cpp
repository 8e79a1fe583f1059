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

TEST_SUITE("oracle") {

TEST_CASE("identity circuit expectations") {
  NoisyCircuit c;
  c.n = 1;
  CHECK(dense_simulate(c, {}, PauliString::from_text("+Z")) == doctest::Approx(1.0));
  CHECK(dense_simulate(c, {}, PauliString::from_text("-Z")) == doctest::Approx(-1.0));
  CHECK(dense_simulate(c, {}, PauliString::from_text("+X")) == doctest::Approx(0.0));
  CHECK(dense_simulate(c, {}, PauliString::from_text("+I")) == doctest::Approx(1.0));
}

TEST_CASE("dephased rotation between Hadamards has the closed form") {
  const double p = 0.08;
  NoisyCircuit c;
  c.n = 1;
  c.add_gate(GateKind::H, 0);
  c.add_rotation(0, "t", LocalPauliNoise::dephasing(p));
  c.add_gate(GateKind::H, 0);
  for (double theta = 0; theta < 6.3; theta += 0.37) {
    CHECK(dense_simulate(c, {theta}, PauliString::from_text("+Z")) ==
          doctest::Approx((1 - 2 * p) * std::cos(theta)).epsilon(1e-12));
  }
}

TEST_CASE("repeated shared rotation gives cos(d theta)") {
  for (int d : {1, 2, 3, 5}) {
    NoisyCircuit c;
    c.n = 1;
    c.add_gate(GateKind::H, 0);
    for (int i = 0; i < d; ++i) c.add_rotation(0, "shared");
    c.add_gate(GateKind::H, 0);
    CHECK(c.param_dim() == 1);
    for (double theta = 0; theta < 6.3; theta += 0.51) {
      CHECK(dense_simulate(c, {theta}, PauliString::from_text("+Z")) ==
            doctest::Approx(std::cos(d * theta)).epsilon(1e-10));
    }
  }
}

TEST_CASE("trace component is preserved by every element") {
  SeededRng rng(21);
  testing::RandomCircuitOptions opt;
  opt.n = 3;
  opt.rotations = 5;
  opt.channel_probability = 0.5;
  const NoisyCircuit c = testing::random_circuit(rng, opt);
  const auto theta = testing::random_theta(rng, c.param_dim());

  PauliVector v = PauliVector::zero_state(3);
  const double trace_component = v.coeff[0];
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
    CHECK(v.coeff[0] == doctest::Approx(trace_component).epsilon(1e-12));
  }
}

TEST_CASE("expectations of Pauli observables stay within [-1, 1]") {
  SeededRng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    testing::RandomCircuitOptions opt;
    opt.n = 1 + static_cast<uint32_t>(rng.index(3));
    opt.rotations = 4;
    opt.channel_probability = 0.3;
    const NoisyCircuit c = testing::random_circuit(rng, opt);
    const PauliString obs = testing::random_pauli(rng, opt.n);
    const auto theta = testing::random_theta(rng, c.param_dim());
    CHECK(std::abs(dense_simulate(c, theta, obs)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("exact series evaluates to the dense value everywhere") {
  SeededRng rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    testing::RandomCircuitOptions opt;
    opt.n = 1 + static_cast<uint32_t>(rng.index(3));
    opt.rotations = 1 + static_cast<uint32_t>(rng.index(6));
    opt.channel_probability = 0.3;
    const NoisyCircuit c = testing::random_circuit(rng, opt);
    const PauliString obs = testing::random_nonidentity_pauli(rng, opt.n);
    const SurrogateSeries s = exact_series(c, obs);
    for (int pt = 0; pt < 20; ++pt) {
      const auto theta = testing::random_theta(rng, c.param_dim());
      CHECK(evaluate(s, theta) ==
            doctest::Approx(dense_simulate(c, theta, obs)).epsilon(1e-9));
    }
  }
}

TEST_CASE("fourier projection of analytic functions") {
  const auto f = [](const std::vector<double>& t) { return 0.7 * std::cos(t[0]); };
  CHECK(fourier_project(f, FrequencyVector::of({{0, 1}}), 1) == doctest::Approx(0.7));
  CHECK(fourier_project(f, FrequencyVector::of({{0, -1}}), 1) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fourier_project(f, FrequencyVector::constant(), 1) ==
        doctest::Approx(0.0).epsilon(1e-12));

  const auto g = [](const std::vector<double>& t) {
    return 0.25 - 0.5 * std::sin(t[0]) * std::cos(t[1]);
  };
  CHECK(fourier_project(g, FrequencyVector::of({{0, -1}, {1, 1}}), 2) ==
        doctest::Approx(-0.5));
  CHECK(fourier_project(g, FrequencyVector::constant(), 2) == doctest::Approx(0.25));

  CHECK_THROWS_AS(fourier_project(f, FrequencyVector::of({{0, 1}}), 1, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(fourier_project(f, FrequencyVector::of({{3, 1}}), 1),
                  std::invalid_argument);
}

TEST_CASE("oracle triangle: series, projection and dense simulation agree") {
  SeededRng rng(59);
  testing::RandomCircuitOptions opt;
  opt.n = 2;
  opt.rotations = 3;
  opt.channel_probability = 0.4;
  const NoisyCircuit c = testing::random_circuit(rng, opt);
  const PauliString obs = testing::random_nonidentity_pauli(rng, 2);
  const SurrogateSeries s = exact_series(c, obs);
  const auto f = [&](const std::vector<double>& theta) {
    return dense_simulate(c, theta, obs);
  };

  // All 27 frequency vectors at m = 3.
  for (int v0 = -1; v0 <= 1; ++v0) {
    for (int v1 = -1; v1 <= 1; ++v1) {
      for (int v2 = -1; v2 <= 1; ++v2) {
        FrequencyVector omega;
        if (v0 != 0) omega.push(0, static_cast<int8_t>(v0));
        if (v1 != 0) omega.push(1, static_cast<int8_t>(v1));
        if (v2 != 0) omega.push(2, static_cast<int8_t>(v2));
        const double projected = fourier_project(f, omega, 3);
        const auto it = s.terms.find(omega);
        const double stored = it == s.terms.end() ? 0.0 : it->second;
        CHECK(stored == doctest::Approx(projected).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("oracle triangle at six rotations, sampled frequencies") {
  SeededRng rng(61);
  testing::RandomCircuitOptions opt;
  opt.n = 3;
  opt.rotations = 6;
  const NoisyCircuit c = testing::random_circuit(rng, opt);
  const PauliString obs = testing::random_nonidentity_pauli(rng, 3);
  const SurrogateSeries s = exact_series(c, obs);
  const auto f = [&](const std::vector<double>& theta) {
    return dense_simulate(c, theta, obs);
  };
  // Every stored term plus a few absent ones, on the minimal exact grid.
  int checked = 0;
  for (const auto& [omega, coeff] : s.terms) {
    if (++checked > 12) break;
    CHECK(fourier_project(f, omega, 6, 4) == doctest::Approx(coeff).epsilon(1e-9));
  }
  FrequencyVector absent = FrequencyVector::of({{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}});
  if (!s.terms.count(absent)) {
    CHECK(fourier_project(f, absent, 6, 4) == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("exact series respects the path budget") {
  const NoisyCircuit c = gen_benchmark(3, 2, 13, BenchmarkFamily::Fig3);
  PauliString obs(3);
  obs.set_component(0, Pauli::X);
  CHECK_THROWS_AS(exact_series(c, obs, 4), BudgetExceeded);
}

TEST_CASE("dense oracle size limit") {
  NoisyCircuit c;
  c.n = 11;
  CHECK_THROWS_AS(dense_simulate(c, {}, PauliString::identity(11)),
                  std::invalid_argument);
}

TEST_CASE("correlated two-qubit channel factors agree between engine and oracle") {
  std::array<double, 16> eigen;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const int weight = (a != 0) + (b != 0);
      eigen[a * 4 + b] = std::pow(0.9, weight) * (a == b ? 1.0 : 0.95);
    }
  }
  eigen[0] = 1.0;

  NoisyCircuit c;
  c.n = 2;
  c.add_gate(GateKind::H, 0);
  c.add_rotation(0, "a", LocalPauliNoise(0.01, 0.02, 0.03));
  c.add_channel(ChannelFactor::two_qubit(0, 1, eigen));
  c.add_gate(GateKind::CX, 0, 1);
  c.add_rotation(1, "b");
  c.add_gate(GateKind::H, 1);
  const PauliString obs = PauliString::from_text("+ZZ");

  const SurrogateSeries s = exact_series(c, obs);
  SeededRng rng(71);
  for (int pt = 0; pt < 25; ++pt) {
    const auto theta = testing::random_theta(rng, 2);
    CHECK(evaluate(s, theta) ==
          doctest::Approx(dense_simulate(c, theta, obs)).epsilon(1e-12));
  }
}

TEST_CASE("a zero channel eigenvalue annihilates the path immediately") {
  NoisyCircuit c;
  c.n = 1;
  c.add_gate(GateKind::H, 0);
  c.add_rotation(0, "t");
  c.add_channel(ChannelFactor::single(0, 0.0, 0.0, 1.0));  // kills X and Y
  c.add_gate(GateKind::H, 0);
  const PauliString obs = PauliString::from_text("+Z");
  // In reverse order the channel sits before the rotation; the frame there
  // is X, so every path dies at the channel.
  const auto r = backpropagate(c, obs, 1);
  CHECK(r.series.terms.empty());
  CHECK(r.stats.explored == 1);
  CHECK(r.stats.completed == 0);
  SeededRng rng(72);
  for (int pt = 0; pt < 5; ++pt) {
    const auto theta = testing::random_theta(rng, 1);
    CHECK(dense_simulate(c, theta, obs) == doctest::Approx(0.0));
  }
}

TEST_CASE("channels at the circuit boundaries match between engine and oracle") {
  // One channel before any rotation (the prologue position) and one as the
  // very last element; both attenuate at exactly the frame where they sit.
  NoisyCircuit c;
  c.n = 2;
  c.add_channel(ChannelFactor::single(0, 0.9, 0.8, 0.7));
  c.add_gate(GateKind::H, 0);
  c.add_rotation(0, "a", LocalPauliNoise(0.02, 0.01, 0.03));
  c.add_gate(GateKind::CX, 0, 1);
  c.add_rotation(1, "b");
  c.add_gate(GateKind::H, 1);
  c.add_channel(ChannelFactor::dephasing(1, 0.15));
  for (const char* obs_text : {"+ZI", "+IZ", "+ZZ", "+XX"}) {
    const PauliString obs = PauliString::from_text(obs_text);
    const SurrogateSeries s = exact_series(c, obs);
    SeededRng rng(91);
    for (int pt = 0; pt < 10; ++pt) {
      const auto theta = testing::random_theta(rng, 2);
      CHECK(evaluate(s, theta) ==
            doctest::Approx(dense_simulate(c, theta, obs)).epsilon(1e-12));
    }
  }
}

TEST_CASE("stress: engine equals oracle on larger circuits with mixed channels") {
  SeededRng rng(617);
  for (int trial = 0; trial < 8; ++trial) {
    testing::RandomCircuitOptions opt;
    opt.n = 3 + static_cast<uint32_t>(rng.index(2));
    opt.rotations = 10 + static_cast<uint32_t>(rng.index(3));
    opt.channel_probability = 0.3;
    opt.two_qubit_channel_probability = 0.3;
    const NoisyCircuit c = testing::random_circuit(rng, opt);
    const PauliString obs = testing::random_z_observable(rng, opt.n);
    const SurrogateSeries s = exact_series(c, obs);
    for (int pt = 0; pt < 10; ++pt) {
      const auto theta = testing::random_theta(rng, c.param_dim());
      CHECK(evaluate(s, theta) ==
            doctest::Approx(dense_simulate(c, theta, obs)).epsilon(1e-9));
    }
  }
}

}  // TEST_SUITE
