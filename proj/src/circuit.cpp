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

#include "lowesa/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "lowesa/errors.hpp"
#include "lowesa/rng.hpp"

namespace lowesa {

uint32_t NoisyCircuit::rotation_count() const {
  uint32_t m = 0;
  for (const auto& e : elements) {
    if (std::holds_alternative<ParamRotation>(e)) ++m;
  }
  return m;
}

std::vector<uint32_t> NoisyCircuit::rotation_slots() const {
  std::vector<uint32_t> slots;
  for (const auto& e : elements) {
    if (const auto* r = std::get_if<ParamRotation>(&e)) slots.push_back(r->slot);
  }
  return slots;
}

std::vector<LocalPauliNoise> NoisyCircuit::rotation_noises() const {
  std::vector<LocalPauliNoise> noises;
  for (const auto& e : elements) {
    if (const auto* r = std::get_if<ParamRotation>(&e)) noises.push_back(r->noise);
  }
  return noises;
}

uint32_t NoisyCircuit::add_rotation(uint32_t qubit, const std::string& param_name,
                                    const LocalPauliNoise& noise) {
  uint32_t slot = param_dim();
  for (uint32_t s = 0; s < param_names.size(); ++s) {
    if (param_names[s] == param_name) {
      slot = s;
      break;
    }
  }
  if (slot == param_names.size()) param_names.push_back(param_name);
  elements.emplace_back(ParamRotation{qubit, slot, noise});
  return slot;
}

ValidationReport validate(const NoisyCircuit& c) {
  ValidationReport report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.errors.push_back(std::move(msg));
  };

  if (c.n == 0) fail("circuit needs at least one qubit");
  if (c.n > PauliString::max_qubits) {
    fail("circuit width exceeds the 64-qubit limit");
  }

  std::vector<uint32_t> slots;
  for (size_t idx = 0; idx < c.elements.size(); ++idx) {
    try {
      std::visit(
          [&](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, CliffordGate>) {
              e.validate(c.n);
            } else if constexpr (std::is_same_v<T, ParamRotation>) {
              if (e.qubit >= c.n) {
                throw std::invalid_argument("rotation qubit " + std::to_string(e.qubit) +
                                            " out of range for n=" + std::to_string(c.n));
              }
              if (e.slot >= c.param_dim()) {
                throw std::invalid_argument("rotation slot " + std::to_string(e.slot) +
                                            " not backed by a parameter name");
              }
              // Re-derive the eigenvalues to catch hand-built structs.
              LocalPauliNoise check(e.noise.p_x, e.noise.p_y, e.noise.p_z);
              (void)check;
              slots.push_back(e.slot);
            } else {
              e.validate(c.n);
            }
          },
          c.elements[idx]);
    } catch (const std::exception& ex) {
      fail("element " + std::to_string(idx) + ": " + ex.what());
    }
  }

  // Slots must cover [0, param_dim) with no gaps.
  std::vector<bool> used(c.param_dim(), false);
  for (uint32_t s : slots) {
    if (s < used.size()) used[s] = true;
  }
  for (uint32_t s = 0; s < used.size(); ++s) {
    if (!used[s]) fail("parameter slot " + std::to_string(s) + " is never used");
  }

  if (slots.size() != c.param_dim()) {
    report.injective = false;
    report.warnings.push_back(
        "non-injective parameter map: " + std::to_string(slots.size()) +
        " rotations share " + std::to_string(c.param_dim()) +
        " parameters; error bounds assume independent parameters");
  }
  return report;
}

void validate_or_throw(const NoisyCircuit& c) {
  ValidationReport report = validate(c);
  if (!report.ok) {
    std::string msg = "invalid circuit:";
    for (const auto& e : report.errors) msg += "\n  " + e;
    throw std::invalid_argument(msg);
  }
}

NoisyCircuit with_rotation_noise(NoisyCircuit c, const LocalPauliNoise& noise) {
  for (auto& e : c.elements) {
    if (auto* r = std::get_if<ParamRotation>(&e)) r->noise = noise;
  }
  return c;
}

BenchmarkFamily benchmark_family_from_name(std::string_view name) {
  if (name == "fig2") return BenchmarkFamily::Fig2;
  if (name == "fig3") return BenchmarkFamily::Fig3;
  throw std::invalid_argument("unknown benchmark family: " + std::string(name));
}

std::string_view benchmark_family_name(BenchmarkFamily f) {
  return f == BenchmarkFamily::Fig2 ? "fig2" : "fig3";
}

std::vector<std::pair<uint32_t, uint32_t>> grid_edges(uint32_t n) {
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  if (n < 2) return edges;
  const uint32_t rows = std::max<uint32_t>(1, static_cast<uint32_t>(std::sqrt(double(n))));
  const uint32_t cols = (n + rows - 1) / rows;
  for (uint32_t q = 0; q < n; ++q) {
    const uint32_t c = q % cols;
    if (c + 1 < cols && q + 1 < n) edges.emplace_back(q, q + 1);
    if (q + cols < n) edges.emplace_back(q, q + cols);
  }
  return edges;
}

NoisyCircuit gen_benchmark(uint32_t n, uint32_t layers, uint64_t seed,
                           BenchmarkFamily family) {
  if (n == 0) throw std::invalid_argument("benchmark circuit needs n >= 1");
  SeededRng rng(seed);
  NoisyCircuit c;
  c.n = n;
  const auto edges = grid_edges(n);
  uint32_t next_param = 0;
  auto fresh = [&] { return "theta" + std::to_string(next_param++); };

  for (uint32_t layer = 0; layer < layers; ++layer) {
    if (family == BenchmarkFamily::Fig2) {
      for (uint32_t q = 0; q < n; ++q) {
        if (rng.coin()) c.add_gate(GateKind::H, q);
        c.add_rotation(q, fresh());
        if (rng.coin()) c.add_gate(GateKind::X, q);
        if (rng.coin()) c.add_gate(GateKind::H, q);
      }
      for (const auto& [a, b] : edges) c.add_gate(GateKind::CX, a, b);
    } else {
      for (uint32_t q = 0; q < n; ++q) {
        c.add_rotation(q, fresh());
        c.add_gate(GateKind::H, q);
        c.add_rotation(q, fresh());
        c.add_gate(GateKind::H, q);
        c.add_rotation(q, fresh());
      }
      for (const auto& [a, b] : edges) {
        if (rng.coin()) c.add_gate(GateKind::CX, a, b);
      }
    }
  }
  return c;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') break;
    tokens.push_back(tok);
  }
  return tokens;
}

double parse_number(const std::string& tok, size_t line) {
  try {
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ParseError(line, "expected a number, got '" + tok + "'");
  }
}

uint32_t parse_index(const std::string& tok, size_t line) {
  try {
    size_t pos = 0;
    unsigned long v = std::stoul(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("");
    return static_cast<uint32_t>(v);
  } catch (...) {
    throw ParseError(line, "expected a non-negative integer, got '" + tok + "'");
  }
}

}  // namespace

NoisyCircuit parse_circuit(std::istream& in) {
  NoisyCircuit c;
  bool have_qubits = false;
  bool have_default_noise = false;
  bool seen_rotation = false;
  LocalPauliNoise default_noise;

  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = tokenize(line);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];

    if (kw == "QUBITS") {
      if (have_qubits) throw ParseError(line_no, "duplicate QUBITS line");
      if (tok.size() != 2) throw ParseError(line_no, "QUBITS takes one argument");
      c.n = parse_index(tok[1], line_no);
      have_qubits = true;
      continue;
    }
    if (!have_qubits) throw ParseError(line_no, "QUBITS must come before '" + kw + "'");

    if (kw == "NOISE_DEFAULT") {
      if (tok.size() != 5 || tok[1] != "ROT") {
        throw ParseError(line_no, "expected: NOISE_DEFAULT ROT p_x p_y p_z");
      }
      if (have_default_noise) throw ParseError(line_no, "duplicate NOISE_DEFAULT line");
      if (seen_rotation) {
        throw ParseError(line_no, "NOISE_DEFAULT must come before the first RZ");
      }
      try {
        default_noise = LocalPauliNoise(parse_number(tok[2], line_no),
                                        parse_number(tok[3], line_no),
                                        parse_number(tok[4], line_no));
      } catch (const std::invalid_argument& ex) {
        throw ParseError(line_no, ex.what());
      }
      have_default_noise = true;
    } else if (kw == "CLIFF") {
      if (tok.size() < 3) throw ParseError(line_no, "expected: CLIFF <GATE> q [q2]");
      GateKind kind;
      try {
        kind = gate_kind_from_name(tok[1]);
      } catch (const std::invalid_argument& ex) {
        throw ParseError(line_no, ex.what());
      }
      const size_t want = 2 + gate_arity(kind);
      if (tok.size() != want) {
        throw ParseError(line_no, std::string(gate_name(kind)) + " takes " +
                                      std::to_string(gate_arity(kind)) + " qubit(s)");
      }
      try {
        if (gate_arity(kind) == 1) {
          c.add_gate(kind, parse_index(tok[2], line_no));
        } else {
          c.add_gate(kind, parse_index(tok[2], line_no), parse_index(tok[3], line_no));
        }
      } catch (const std::invalid_argument& ex) {
        throw ParseError(line_no, ex.what());
      }
    } else if (kw == "RZ") {
      if (tok.size() != 3 && tok.size() != 6) {
        throw ParseError(line_no, "expected: RZ q name [p_x p_y p_z]");
      }
      LocalPauliNoise noise = default_noise;
      if (tok.size() == 6) {
        try {
          noise = LocalPauliNoise(parse_number(tok[3], line_no),
                                  parse_number(tok[4], line_no),
                                  parse_number(tok[5], line_no));
        } catch (const std::invalid_argument& ex) {
          throw ParseError(line_no, ex.what());
        }
      }
      c.add_rotation(parse_index(tok[1], line_no), tok[2], noise);
      seen_rotation = true;
    } else if (kw == "CHANNEL") {
      if (tok.size() < 2) throw ParseError(line_no, "CHANNEL needs a subtype");
      try {
        if (tok[1] == "DEPOL") {
          if (tok.size() != 4) throw ParseError(line_no, "expected: CHANNEL DEPOL q eta");
          c.add_channel(ChannelFactor::depolarizing(parse_index(tok[2], line_no),
                                                    parse_number(tok[3], line_no)));
        } else if (tok[1] == "PAULI") {
          if (tok.size() != 6) {
            throw ParseError(line_no, "expected: CHANNEL PAULI q q_x q_y q_z");
          }
          c.add_channel(ChannelFactor::single(parse_index(tok[2], line_no),
                                              parse_number(tok[3], line_no),
                                              parse_number(tok[4], line_no),
                                              parse_number(tok[5], line_no)));
        } else if (tok[1] == "PAULI2") {
          if (tok.size() != 20) {
            throw ParseError(line_no, "expected: CHANNEL PAULI2 a b <16 eigenvalues>");
          }
          std::array<double, 16> eigen;
          for (int i = 0; i < 16; ++i) eigen[i] = parse_number(tok[4 + i], line_no);
          c.add_channel(ChannelFactor::two_qubit(parse_index(tok[2], line_no),
                                                 parse_index(tok[3], line_no), eigen));
        } else {
          throw ParseError(line_no, "unknown channel subtype: " + tok[1]);
        }
      } catch (const std::invalid_argument& ex) {
        throw ParseError(line_no, ex.what());
      }
    } else {
      throw ParseError(line_no, "unknown directive: " + kw);
    }
  }
  if (!have_qubits) throw ParseError(line_no == 0 ? 1 : line_no, "missing QUBITS line");
  return c;
}

NoisyCircuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  return parse_circuit(in);
}

NoisyCircuit parse_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file: " + path);
  return parse_circuit(in);
}

namespace {

std::string format_probability(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string write_circuit(const NoisyCircuit& c) {
  std::string out = "QUBITS " + std::to_string(c.n) + "\n";

  // Emit a NOISE_DEFAULT line when every rotation shares the same noise.
  const auto noises = c.rotation_noises();
  bool uniform = !noises.empty();
  for (const auto& nz : noises) {
    uniform = uniform && nz.p_x == noises[0].p_x && nz.p_y == noises[0].p_y &&
              nz.p_z == noises[0].p_z;
  }
  const bool use_default = uniform && !noises[0].is_noiseless();
  if (use_default) {
    out += "NOISE_DEFAULT ROT " + format_probability(noises[0].p_x) + " " +
           format_probability(noises[0].p_y) + " " + format_probability(noises[0].p_z) +
           "\n";
  }

  for (const auto& e : c.elements) {
    std::visit(
        [&](const auto& elem) {
          using T = std::decay_t<decltype(elem)>;
          if constexpr (std::is_same_v<T, CliffordGate>) {
            out += "CLIFF " + std::string(gate_name(elem.kind)) + " " +
                   std::to_string(elem.qubits[0]);
            if (gate_arity(elem.kind) == 2) out += " " + std::to_string(elem.qubits[1]);
            out += "\n";
          } else if constexpr (std::is_same_v<T, ParamRotation>) {
            out += "RZ " + std::to_string(elem.qubit) + " " + c.param_names[elem.slot];
            if (!use_default && !elem.noise.is_noiseless()) {
              out += " " + format_probability(elem.noise.p_x) + " " +
                     format_probability(elem.noise.p_y) + " " +
                     format_probability(elem.noise.p_z);
            }
            out += "\n";
          } else {
            for (const auto& f : elem.factors) {
              if (f.arity == 1) {
                out += "CHANNEL PAULI " + std::to_string(f.qubits[0]);
                for (int i = 1; i < 4; ++i) out += " " + format_probability(f.eigen[i]);
              } else {
                out += "CHANNEL PAULI2 " + std::to_string(f.qubits[0]) + " " +
                       std::to_string(f.qubits[1]);
                for (int i = 0; i < 16; ++i) out += " " + format_probability(f.eigen[i]);
              }
              out += "\n";
            }
          }
        },
        e);
  }
  return out;
}

void write_circuit_file(const NoisyCircuit& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write circuit file: " + path);
  out << write_circuit(c);
}

}  // namespace lowesa
