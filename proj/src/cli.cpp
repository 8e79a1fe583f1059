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

#include "lowesa/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lowesa/engine.hpp"
#include "lowesa/errors.hpp"
#include "lowesa/oracle.hpp"
#include "lowesa/surrogate.hpp"

namespace lowesa {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitComparisonFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitBudget = 4;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    size_t pos = 0;
    out.push_back(std::stod(item, &pos));
    if (pos != item.size()) throw std::invalid_argument("bad number '" + item + "'");
  }
  return out;
}

std::vector<uint32_t> parse_index_list(const std::string& text) {
  std::vector<uint32_t> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    size_t pos = 0;
    out.push_back(static_cast<uint32_t>(std::stoul(item, &pos)));
    if (pos != item.size()) throw std::invalid_argument("bad index '" + item + "'");
  }
  return out;
}

std::vector<double> load_theta(const std::string& inline_list, const std::string& path) {
  if (!inline_list.empty() && !path.empty()) {
    throw std::invalid_argument("--theta and --theta-file are mutually exclusive");
  }
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open theta file: " + path);
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    return out;
  }
  return parse_double_list(inline_list);
}

PauliString parse_observable(const std::string& text, uint32_t n) {
  PauliString p = PauliString::from_text(text);
  if (p.n != n) {
    throw std::invalid_argument("observable '" + text + "' has " + std::to_string(p.n) +
                                " qubits but the circuit has " + std::to_string(n));
  }
  return p;
}

/// Observable sum file: one `weight pauli` pair per line, '#' comments.
std::vector<std::pair<double, PauliString>> parse_observable_file(
    const std::string& path, uint32_t n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open observable file: " + path);
  std::vector<std::pair<double, PauliString>> terms;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string wtok, ptok;
    if (!(ls >> wtok) || wtok[0] == '#') continue;
    if (!(ls >> ptok)) throw ParseError(line_no, "expected: <weight> <pauli>");
    double w;
    try {
      size_t pos = 0;
      w = std::stod(wtok, &pos);
      if (pos != wtok.size()) throw std::invalid_argument("");
    } catch (...) {
      throw ParseError(line_no, "bad weight '" + wtok + "'");
    }
    try {
      terms.emplace_back(w, parse_observable(ptok, n));
    } catch (const std::invalid_argument& ex) {
      throw ParseError(line_no, ex.what());
    }
  }
  if (terms.empty()) throw ParseError(line_no == 0 ? 1 : line_no, "no observable terms");
  return terms;
}

void print_validation(const ValidationReport& report) {
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& e : report.errors) std::cerr << "error: " << e << "\n";
}

NoisyCircuit load_circuit(const std::string& path) {
  NoisyCircuit c = parse_circuit_file(path);
  ValidationReport report = validate(c);
  print_validation(report);
  if (!report.ok) throw std::invalid_argument("circuit failed validation");
  return c;
}

SurrogateSeries load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coefficient file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

/// Reinterprets the rotation->slot map, e.g. for evaluating a series
/// produced with independent parameters under a sharing pattern.
SurrogateSeries apply_sharing_map(SurrogateSeries s, const std::vector<uint32_t>& map) {
  if (map.size() != s.meta.m) {
    throw std::invalid_argument("sharing map must list one slot per rotation (" +
                                std::to_string(s.meta.m) + ")");
  }
  uint32_t dim = 0;
  for (uint32_t slot : map) dim = std::max(dim, slot + 1);
  std::vector<bool> used(dim, false);
  for (uint32_t slot : map) used[slot] = true;
  for (uint32_t slot = 0; slot < dim; ++slot) {
    if (!used[slot]) {
      throw std::invalid_argument("sharing map skips slot " + std::to_string(slot));
    }
  }
  s.meta.slot_map = map;
  s.meta.param_dim = dim;
  return s;
}

struct RunOutcome {
  SurrogateSeries series;
  PathStats stats;
  double wall_ms = 0;
};

RunOutcome run_lowesa(const NoisyCircuit& c,
                      const std::vector<std::pair<double, PauliString>>& obs_terms,
                      uint32_t cutoff, int workers, uint64_t budget = 0) {
  const auto t0 = std::chrono::steady_clock::now();
  RunOutcome out;
  std::vector<std::pair<double, SurrogateSeries>> parts;
  std::string desc;
  for (const auto& [w, p] : obs_terms) {
    BackpropResult r = backpropagate(c, p, cutoff, budget == 0 ? workers : 1, budget);
    out.stats.explored += r.stats.explored;
    out.stats.completed += r.stats.completed;
    out.stats.emitted += r.stats.emitted;
    out.stats.theoretical = r.stats.theoretical;
    out.stats.saturated = r.stats.saturated;
    if (!desc.empty()) desc += " + ";
    desc += fmt17(w) + "*" + p.to_text();
    parts.emplace_back(w, std::move(r.series));
  }
  if (parts.size() == 1 && obs_terms[0].first == 1.0) {
    out.series = std::move(parts[0].second);
  } else {
    out.series = merge_weighted(parts, desc);
  }
  const auto t1 = std::chrono::steady_clock::now();
  out.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return out;
}

int cmd_run(const std::string& circuit_path, const std::string& obs_text,
            const std::string& obs_path, uint32_t cutoff, int workers,
            const std::string& out_path, uint64_t budget) {
  NoisyCircuit c = load_circuit(circuit_path);
  std::vector<std::pair<double, PauliString>> obs_terms;
  if (!obs_path.empty()) {
    obs_terms = parse_observable_file(obs_path, c.n);
  } else {
    obs_terms.emplace_back(1.0, parse_observable(obs_text, c.n));
  }
  RunOutcome out = run_lowesa(c, obs_terms, cutoff, workers, budget);
  std::ofstream file(out_path);
  if (!file) throw std::runtime_error("cannot write coefficient file: " + out_path);
  file << serialize(out.series);
  std::cout << "STATS explored=" << out.stats.explored
            << " completed=" << out.stats.completed << " terms=" << out.series.terms.size()
            << " theoretical=" << out.stats.theoretical
            << " saturated=" << (out.stats.saturated ? 1 : 0)
            << " wall_ms=" << out.wall_ms << "\n";
  return kExitOk;
}

int cmd_eval(const std::string& coeff_path, const std::string& theta_text,
             const std::string& theta_path, const std::string& map_text,
             const std::string& bind_text) {
  SurrogateSeries s = load_series(coeff_path);
  if (!map_text.empty()) s = apply_sharing_map(std::move(s), parse_index_list(map_text));
  if (!bind_text.empty()) {
    std::map<uint32_t, double> fixed;
    std::istringstream in(bind_text);
    std::string item;
    while (std::getline(in, item, ',')) {
      const size_t eq = item.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("expected slot=angle in --bind");
      }
      fixed[static_cast<uint32_t>(std::stoul(item.substr(0, eq)))] =
          std::stod(item.substr(eq + 1));
    }
    s = bind_fixed(s, fixed);
  }
  const std::vector<double> theta = load_theta(theta_text, theta_path);
  std::cout << "VALUE " << fmt17(evaluate(s, theta)) << "\n";
  return kExitOk;
}

int cmd_oracle(const std::string& circuit_path, const std::string& obs_text,
               const std::string& theta_text, const std::string& theta_path) {
  NoisyCircuit c = load_circuit(circuit_path);
  const PauliString obs = parse_observable(obs_text, c.n);
  const std::vector<double> theta = load_theta(theta_text, theta_path);
  std::cout << "VALUE " << fmt17(dense_simulate(c, theta, obs)) << "\n";
  return kExitOk;
}

int cmd_compare(const std::string& circuit_path, const std::string& obs_text,
                uint32_t cutoff, uint64_t samples, uint64_t seed, int workers,
                uint64_t budget) {
  NoisyCircuit c = load_circuit(circuit_path);
  const PauliString obs = parse_observable(obs_text, c.n);
  const ValidationReport report = validate(c);

  BackpropResult run = backpropagate(c, obs, cutoff, workers);
  const SurrogateSeries& g = run.series;

  const auto f_eval = [&](const std::vector<double>& theta) {
    return dense_simulate(c, theta, obs);
  };
  const auto g_eval = [&](const std::vector<double>& theta) {
    return evaluate(g, theta);
  };
  const MonteCarloEstimate mc =
      monte_carlo_distance(f_eval, g_eval, c.param_dim(), samples, seed, workers);
  std::cout << "MC_DISTANCE " << fmt17(mc.distance) << " STDERR " << fmt17(mc.std_error)
            << "\n";

  if (report.injective) {
    try {
      const SurrogateSeries exact = exact_series(c, obs, budget);
      std::cout << "PARSEVAL " << fmt17(parseval_distance(exact, g)) << "\n";
    } catch (const BudgetExceeded&) {
      std::cout << "PARSEVAL omitted (exact series exceeds the path budget)\n";
    }
  } else {
    std::cout << "PARSEVAL omitted (non-injective parameter map)\n";
  }

  bool have_bound = false;
  BoundPair bound{};
  if (report.injective) {
    try {
      bound = theoretical_bound(cutoff, summarize_rotation_noise(c.rotation_noises()));
      have_bound = true;
      std::cout << "BOUND tight=" << fmt17(bound.tight)
                << " exp=" << fmt17(bound.exponential) << "\n";
    } catch (const std::invalid_argument& ex) {
      std::cout << "BOUND omitted (" << ex.what() << ")\n";
    }
  } else {
    std::cout << "BOUND omitted (non-injective parameter map)\n";
  }

  if (have_bound) {
    const bool pass = mc.distance <= bound.tight + 3.0 * mc.std_error;
    std::cout << "CHECK mc<=tight+3se " << (pass ? "PASS" : "FAIL") << "\n";
    if (!pass) return kExitComparisonFailed;
  }
  return kExitOk;
}

int cmd_bound(const std::string& circuit_path, uint32_t cutoff, double p, double pz,
              double eta, const std::vector<double>& ks) {
  NoiseSummary noise;
  if (!circuit_path.empty()) {
    NoisyCircuit c = load_circuit(circuit_path);
    noise = summarize_rotation_noise(c.rotation_noises());
  } else {
    noise.p_prime = p;
    noise.p_prime_z = pz;
  }
  noise.eta = eta;
  std::cout << "NOISE p_prime=" << fmt17(noise.p_prime)
            << " p_prime_z=" << fmt17(noise.p_prime_z) << " eta=" << fmt17(noise.eta)
            << "\n";
  const BoundPair b = theoretical_bound(cutoff, noise);
  std::cout << "BOUND l=" << cutoff << " tight=" << fmt17(b.tight)
            << " exp=" << fmt17(b.exponential) << "\n";
  for (double k : ks) {
    const ChebyshevTail t = chebyshev_tail(k, cutoff, noise);
    std::cout << "CHEB k=" << fmt17(k) << " threshold=" << fmt17(t.threshold)
              << " prob=" << fmt17(t.probability) << "\n";
  }
  return kExitOk;
}

int cmd_gen(const std::string& family_name, uint32_t n, uint32_t layers, uint64_t seed,
            const std::string& noise_text, const std::string& out_path) {
  NoisyCircuit c = gen_benchmark(n, layers, seed, benchmark_family_from_name(family_name));
  if (!noise_text.empty()) {
    const auto p = parse_double_list(noise_text);
    if (p.size() != 3) throw std::invalid_argument("--noise takes p_x,p_y,p_z");
    c = with_rotation_noise(std::move(c), LocalPauliNoise(p[0], p[1], p[2]));
  }
  write_circuit_file(c, out_path);
  std::cout << "GEN family=" << family_name << " n=" << n << " m=" << c.rotation_count()
            << " params=" << c.param_dim() << " out=" << out_path << "\n";
  return kExitOk;
}

int cmd_bench(const std::string& family_name, const std::string& ns_text,
              const std::string& ls_text, uint32_t layers, uint32_t reps, uint64_t seed,
              const std::string& noise_text) {
  LocalPauliNoise noise;
  if (!noise_text.empty()) {
    const auto p = parse_double_list(noise_text);
    if (p.size() != 3) throw std::invalid_argument("--noise takes p_x,p_y,p_z");
    noise = LocalPauliNoise(p[0], p[1], p[2]);
  }
  const auto rows = run_bench(benchmark_family_from_name(family_name),
                              parse_index_list(ns_text), parse_index_list(ls_text),
                              layers, reps, seed, noise);
  std::cout << "# family=" << family_name << " layers=" << layers << " reps=" << reps
            << " seed=" << seed << " workers=1\n";
  std::cout << "# n m l explored completed terms theoretical wall_ms\n";
  for (const auto& r : rows) {
    std::cout << "BENCH n=" << r.n << " m=" << r.m << " l=" << r.cutoff
              << " explored=" << r.explored << " completed=" << r.completed
              << " terms=" << r.emitted
              << " theoretical=" << (r.saturated ? std::string("inf")
                                                 : std::to_string(r.theoretical))
              << " wall_ms=" << r.median_ms << "\n";
  }
  return kExitOk;
}

}  // namespace

std::vector<BenchRow> run_bench(BenchmarkFamily family, const std::vector<uint32_t>& ns,
                                const std::vector<uint32_t>& cutoffs, uint32_t layers,
                                uint32_t reps, uint64_t seed,
                                const LocalPauliNoise& noise) {
  std::vector<BenchRow> rows;
  for (uint32_t n : ns) {
    NoisyCircuit c = with_rotation_noise(gen_benchmark(n, layers, seed, family), noise);
    PauliString obs(n);
    obs.set_component(0, Pauli::Z);
    for (uint32_t cutoff : cutoffs) {
      BenchRow row;
      row.n = n;
      row.cutoff = cutoff;
      row.m = c.rotation_count();

      // Size the inner repeat count so one sample is long enough to time.
      const auto t0 = std::chrono::steady_clock::now();
      BackpropResult r = backpropagate(c, obs, cutoff, /*workers=*/1);
      const auto t1 = std::chrono::steady_clock::now();
      double once_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      const uint32_t inner =
          once_ms >= 2.0 ? 1 : static_cast<uint32_t>(std::min(10000.0, 2.0 / std::max(once_ms, 1e-4)) + 1);

      row.explored = r.stats.explored;
      row.completed = r.stats.completed;
      row.emitted = r.stats.emitted;
      row.theoretical = r.stats.theoretical;
      row.saturated = r.stats.saturated;

      std::vector<double> samples;
      samples.reserve(reps);
      for (uint32_t rep = 0; rep < std::max<uint32_t>(reps, 1); ++rep) {
        const auto s0 = std::chrono::steady_clock::now();
        for (uint32_t i = 0; i < inner; ++i) {
          BackpropResult again = backpropagate(c, obs, cutoff, /*workers=*/1);
          if (again.stats.explored != row.explored) {
            throw std::logic_error("nondeterministic path count");
          }
        }
        const auto s1 = std::chrono::steady_clock::now();
        samples.push_back(std::chrono::duration<double, std::milli>(s1 - s0).count() /
                          inner);
      }
      std::sort(samples.begin(), samples.end());
      row.median_ms = samples[samples.size() / 2];
      rows.push_back(row);
    }
  }
  return rows;
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Surrogate landscapes for noisy parameterized quantum circuits"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "back-propagate and write a coefficient file");
  std::string run_circuit, run_obs, run_obs_file, run_out = "coeffs.txt";
  uint32_t run_cutoff = 0;
  uint64_t run_budget = 0;
  int run_workers = 1;
  run->add_option("-c,--circuit", run_circuit, "circuit file")->required();
  run->add_option("-o,--obs", run_obs, "observable Pauli, e.g. +ZII");
  run->add_option("--obs-file", run_obs_file, "weighted observable sum file");
  run->add_option("-l,--cutoff", run_cutoff, "weight cutoff")->required();
  run->add_option("-w,--workers", run_workers, "worker threads")->check(CLI::Range(1, 1024));
  run->add_option("--out", run_out, "output coefficient file");
  run->add_option("--budget", run_budget, "abort after this many paths (0 = unlimited)");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a coefficient file");
  std::string eval_coeffs, eval_theta, eval_theta_file, eval_map, eval_bind;
  eval->add_option("--coeffs", eval_coeffs, "coefficient file")->required();
  eval->add_option("--theta", eval_theta, "comma-separated angles (radians)");
  eval->add_option("--theta-file", eval_theta_file, "whitespace-separated angles file");
  eval->add_option("--map", eval_map, "rotation->slot sharing map, comma-separated");
  eval->add_option("--bind", eval_bind, "fixed angles, slot=angle[,slot=angle...]");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "dense reference simulation at theta");
  std::string orc_circuit, orc_obs, orc_theta, orc_theta_file;
  oracle->add_option("-c,--circuit", orc_circuit, "circuit file")->required();
  oracle->add_option("-o,--obs", orc_obs, "observable Pauli")->required();
  oracle->add_option("--theta", orc_theta, "comma-separated angles (radians)");
  oracle->add_option("--theta-file", orc_theta_file, "whitespace-separated angles file");

  // compare
  auto* compare = app.add_subcommand("compare", "surrogate vs oracle distances and bounds");
  std::string cmp_circuit, cmp_obs;
  uint32_t cmp_cutoff = 0;
  uint64_t cmp_samples = 10000, cmp_seed = 1, cmp_budget = uint64_t{1} << 26;
  int cmp_workers = 1;
  compare->add_option("-c,--circuit", cmp_circuit, "circuit file")->required();
  compare->add_option("-o,--obs", cmp_obs, "observable Pauli")->required();
  compare->add_option("-l,--cutoff", cmp_cutoff, "weight cutoff")->required();
  compare->add_option("--samples", cmp_samples, "Monte-Carlo samples");
  compare->add_option("--seed", cmp_seed, "Monte-Carlo seed");
  compare->add_option("-w,--workers", cmp_workers, "worker threads")->check(CLI::Range(1, 1024));
  compare->add_option("--budget", cmp_budget, "path budget for the exact series");

  // bound
  auto* bound = app.add_subcommand("bound", "print truncation error bounds");
  std::string bnd_circuit;
  uint32_t bnd_cutoff = 0;
  double bnd_p = 0, bnd_pz = 0, bnd_eta = 0;
  std::vector<double> bnd_ks;
  bound->add_option("-c,--circuit", bnd_circuit, "derive noise floor from a circuit file");
  bound->add_option("-l,--cutoff", bnd_cutoff, "weight cutoff")->required();
  bound->add_option("--p", bnd_p, "min over rotations of min(p_x, p_y)");
  bound->add_option("--pz", bnd_pz, "min over rotations of p_z");
  bound->add_option("--eta", bnd_eta, "per-primitive depolarizing rate");
  bound->add_option("--k", bnd_ks, "Chebyshev k values");

  // bench
  auto* bench = app.add_subcommand("bench", "timing table over n and cutoff sweeps");
  std::string bch_family = "fig2", bch_ns = "4,9,16", bch_ls = "8", bch_noise;
  uint32_t bch_layers = 2, bch_reps = 3;
  uint64_t bch_seed = 1;
  bench->add_option("--family", bch_family, "fig2 or fig3");
  bench->add_option("-n,--n", bch_ns, "comma-separated qubit counts");
  bench->add_option("-l,--cutoffs", bch_ls, "comma-separated weight cutoffs");
  bench->add_option("--layers", bch_layers, "circuit layers");
  bench->add_option("--reps", bch_reps, "timing repetitions per point");
  bench->add_option("--seed", bch_seed, "generator seed");
  bench->add_option("--noise", bch_noise, "rotation noise p_x,p_y,p_z");

  // gen
  auto* gen = app.add_subcommand("gen", "write a benchmark circuit file");
  std::string gen_family = "fig3", gen_noise, gen_out = "circuit.txt";
  uint32_t gen_n = 4, gen_layers = 2;
  uint64_t gen_seed = 1;
  gen->add_option("--family", gen_family, "fig2 or fig3");
  gen->add_option("-n,--n", gen_n, "qubit count");
  gen->add_option("--layers", gen_layers, "circuit layers");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--noise", gen_noise, "rotation noise p_x,p_y,p_z");
  gen->add_option("--out", gen_out, "output circuit file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (run->parsed()) {
      if (run_obs.empty() == run_obs_file.empty()) {
        throw std::invalid_argument("run needs exactly one of --obs / --obs-file");
      }
      return cmd_run(run_circuit, run_obs, run_obs_file, run_cutoff, run_workers,
                     run_out, run_budget);
    }
    if (eval->parsed()) {
      return cmd_eval(eval_coeffs, eval_theta, eval_theta_file, eval_map, eval_bind);
    }
    if (oracle->parsed()) {
      return cmd_oracle(orc_circuit, orc_obs, orc_theta, orc_theta_file);
    }
    if (compare->parsed()) {
      return cmd_compare(cmp_circuit, cmp_obs, cmp_cutoff, cmp_samples, cmp_seed,
                         cmp_workers, cmp_budget);
    }
    if (bound->parsed()) {
      return cmd_bound(bnd_circuit, bnd_cutoff, bnd_p, bnd_pz, bnd_eta, bnd_ks);
    }
    if (bench->parsed()) {
      return cmd_bench(bch_family, bch_ns, bch_ls, bch_layers, bch_reps, bch_seed,
                       bch_noise);
    }
    if (gen->parsed()) {
      return cmd_gen(gen_family, gen_n, gen_layers, gen_seed, gen_noise, gen_out);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}

int cli_main(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("lowesa");
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace lowesa
