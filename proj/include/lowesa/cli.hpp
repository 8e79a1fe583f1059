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
#include <string>
#include <vector>

#include "lowesa/circuit.hpp"

namespace lowesa {

/// Command-line entry point (subcommands: run, eval, oracle, compare, bound,
/// bench, gen). Exit codes: 0 ok, 1 comparison failure, 2 parse error,
/// 3 invariant violation, 4 path budget exceeded.
int cli_main(int argc, const char* const* argv);

/// Convenience wrapper for tests: argv without the program name.
int cli_main(const std::vector<std::string>& args);

struct BenchRow {
  uint32_t n = 0, m = 0, cutoff = 0;
  uint64_t explored = 0, completed = 0, emitted = 0, theoretical = 0;
  bool saturated = false;
  double median_ms = 0;
};

/// The measurement loop behind the `bench` subcommand: single-worker runs,
/// median wall time over `reps` samples (short runs are repeated internally
/// until a sample is long enough to time reliably). One circuit per n,
/// reused across cutoffs; the observable is Z on qubit 0.
std::vector<BenchRow> run_bench(BenchmarkFamily family,
                                const std::vector<uint32_t>& ns,
                                const std::vector<uint32_t>& cutoffs,
                                uint32_t layers, uint32_t reps, uint64_t seed,
                                const LocalPauliNoise& noise);

}  // namespace lowesa
