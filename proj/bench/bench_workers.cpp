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

// Compares the serial reference back-propagation against the OpenMP lane on
// one instance and verifies that both produce byte-identical coefficients.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lowesa/engine.hpp"
#include "lowesa/surrogate.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace lowesa;

namespace {

double time_ms(const NoisyCircuit& c, const PauliString& obs, uint32_t cutoff,
               int workers, BackpropResult& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = backpropagate(c, obs, cutoff, workers);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP back-propagation"};
  std::string family = "fig3";
  uint32_t n = 9, layers = 2, obs_qubit = 8;
  uint64_t seed = 21;
  std::string cutoffs_text = "18,20,22";
  double p = 0.05;
  app.add_option("--family", family, "fig2 or fig3");
  app.add_option("-n,--n", n, "qubit count");
  app.add_option("--layers", layers, "circuit layers");
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--obs-qubit", obs_qubit, "qubit carrying the Y observable");
  app.add_option("-l,--cutoffs", cutoffs_text, "comma-separated weight cutoffs");
  app.add_option("-p,--p", p, "symmetric Pauli probability per rotation");
  CLI11_PARSE(app, argc, argv);

  const NoisyCircuit c =
      with_rotation_noise(gen_benchmark(n, layers, seed, benchmark_family_from_name(family)),
                          LocalPauliNoise(p, p, p));
  PauliString obs(n);
  obs.set_component(obs_qubit, Pauli::Y);

  std::vector<int> worker_counts = {2, 4, 8};
#ifdef _OPENMP
  while (worker_counts.size() > 1 && worker_counts.back() > 2 * omp_get_max_threads()) {
    worker_counts.pop_back();
  }
#endif
#ifdef _OPENMP
  std::printf("# OpenMP, max threads %d\n", omp_get_max_threads());
#else
  std::printf("# built without OpenMP; parallel runs fall back to serial\n");
#endif
  std::printf("# family=%s n=%u layers=%u m=%u seed=%llu p=%g obs=Y@%u\n",
              family.c_str(), n, layers, c.rotation_count(),
              static_cast<unsigned long long>(seed), p, obs_qubit);
  std::printf("%6s %12s %12s %10s %10s %10s %8s\n", "l", "explored", "terms",
              "serial_ms", "workers", "par_ms", "speedup");

  std::string item;
  std::istringstream cuts(cutoffs_text);
  while (std::getline(cuts, item, ',')) {
    const uint32_t cutoff = static_cast<uint32_t>(std::stoul(item));
    BackpropResult serial;
    const double serial_ms = time_ms(c, obs, cutoff, 1, serial);
    const std::string reference = serialize(serial.series);
    std::printf("%6u %12llu %12zu %10.2f %10s %10s %8s\n", cutoff,
                static_cast<unsigned long long>(serial.stats.explored),
                serial.series.terms.size(), serial_ms, "-", "-", "-");
    for (int workers : worker_counts) {
      BackpropResult parallel;
      const double par_ms = time_ms(c, obs, cutoff, workers, parallel);
      const bool same = serialize(parallel.series) == reference;
      std::printf("%6s %12s %12s %10s %10d %10.2f %7.2fx%s\n", "", "", "", "", workers,
                  par_ms, serial_ms / par_ms, same ? "" : "  MISMATCH");
      if (!same) return 1;
    }
  }
  return 0;
}
