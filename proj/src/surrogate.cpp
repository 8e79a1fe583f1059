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

#include "lowesa/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "lowesa/errors.hpp"
#include "lowesa/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lowesa {

void FrequencyVector::push(uint32_t index, int8_t value) {
  if (value != 1 && value != -1) throw std::invalid_argument("frequency value must be +1 or -1");
  if (!entries.empty() && entries.back().first >= index) {
    throw std::invalid_argument("frequency indices must be strictly ascending");
  }
  entries.emplace_back(index, value);
}

FrequencyVector FrequencyVector::of(
    std::initializer_list<std::pair<uint32_t, int8_t>> e) {
  FrequencyVector v;
  for (const auto& [i, val] : e) v.push(i, val);
  return v;
}

std::string FrequencyVector::to_text() const {
  if (entries.empty()) return "-";
  std::string s;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(entries[i].first);
    s += entries[i].second > 0 ? ":+1" : ":-1";
  }
  return s;
}

bool SeriesMeta::injective() const {
  std::vector<bool> seen(param_dim, false);
  for (uint32_t s : slot_map) {
    if (s == kBoundSlot) continue;
    if (s >= param_dim) return false;
    if (seen[s]) return false;
    seen[s] = true;
  }
  return true;
}

void SurrogateSeries::insert_term(FrequencyVector omega, double coeff) {
  if (omega.weight() > meta.cutoff) {
    throw std::invalid_argument("term weight " + std::to_string(omega.weight()) +
                                " exceeds cutoff " + std::to_string(meta.cutoff));
  }
  if (!omega.entries.empty() && omega.entries.back().first >= meta.m) {
    throw std::invalid_argument("frequency index out of range");
  }
  if (coeff == 0.0) throw std::invalid_argument("zero coefficients are not stored");
  auto [it, inserted] = terms.emplace(std::move(omega), coeff);
  (void)it;
  if (!inserted) throw std::logic_error("duplicate frequency vector in series");
}

double evaluate(const SurrogateSeries& s, const ParameterAssignment& theta) {
  if (theta.size() != s.meta.param_dim) {
    throw std::invalid_argument("parameter vector length " + std::to_string(theta.size()) +
                                " does not match series dimension " +
                                std::to_string(s.meta.param_dim));
  }
  double acc = 0.0;
  for (const auto& [omega, coeff] : s.terms) {
    double term = coeff;
    for (const auto& [i, v] : omega.entries) {
      const double angle = theta[s.meta.slot_map[i]];
      term *= v > 0 ? std::cos(angle) : std::sin(angle);
    }
    acc += term;
  }
  return acc;
}

SurrogateSeries bind_fixed(const SurrogateSeries& s,
                           const std::map<uint32_t, double>& fixed) {
  for (const auto& [slot, angle] : fixed) {
    (void)angle;
    if (slot >= s.meta.param_dim) {
      throw std::invalid_argument("bound slot " + std::to_string(slot) + " out of range");
    }
  }

  // Renumber the surviving slots compactly, in ascending slot order.
  std::vector<uint32_t> new_slot(s.meta.param_dim, kBoundSlot);
  uint32_t next = 0;
  for (uint32_t slot = 0; slot < s.meta.param_dim; ++slot) {
    if (!fixed.count(slot)) new_slot[slot] = next++;
  }

  SurrogateSeries out;
  out.meta = s.meta;
  out.meta.param_dim = next;
  for (auto& slot : out.meta.slot_map) {
    if (slot != kBoundSlot) slot = new_slot[slot];
  }

  std::map<FrequencyVector, double> merged;
  for (const auto& [omega, coeff] : s.terms) {
    double folded = coeff;
    FrequencyVector rest;
    for (const auto& [i, v] : omega.entries) {
      const uint32_t slot = s.meta.slot_map[i];
      auto it = fixed.find(slot);
      if (it != fixed.end()) {
        folded *= v > 0 ? std::cos(it->second) : std::sin(it->second);
      } else {
        rest.push(i, v);
      }
    }
    if (folded != 0.0) merged[std::move(rest)] += folded;
  }
  for (auto& [omega, coeff] : merged) {
    if (std::abs(coeff) < kCoefficientDust) continue;
    out.terms.emplace(omega, coeff);
  }
  return out;
}

SurrogateSeries truncate(const SurrogateSeries& s, uint32_t cutoff) {
  SurrogateSeries out;
  out.meta = s.meta;
  out.meta.cutoff = cutoff;
  for (const auto& [omega, coeff] : s.terms) {
    if (omega.weight() <= cutoff) out.terms.emplace(omega, coeff);
  }
  return out;
}

double parseval_distance(const SurrogateSeries& a, const SurrogateSeries& b) {
  if (a.meta.m != b.meta.m || a.meta.param_dim != b.meta.param_dim) {
    throw std::invalid_argument("series dimensions do not match");
  }
  if (!a.meta.injective() || !b.meta.injective()) {
    throw std::invalid_argument(
        "parseval distance requires an injective parameter map; the "
        "trigonometric monomials are not orthogonal under parameter sharing");
  }
  double sum = 0.0;
  auto ia = a.terms.begin();
  auto ib = b.terms.begin();
  auto add = [&sum](const FrequencyVector& omega, double diff) {
    sum += std::ldexp(diff * diff, -static_cast<int>(omega.weight()));
  };
  while (ia != a.terms.end() || ib != b.terms.end()) {
    if (ib == b.terms.end() || (ia != a.terms.end() && ia->first < ib->first)) {
      add(ia->first, ia->second);
      ++ia;
    } else if (ia == a.terms.end() || ib->first < ia->first) {
      add(ib->first, ib->second);
      ++ib;
    } else {
      add(ia->first, ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return std::sqrt(sum);
}

namespace {

// Neumaier-compensated sum; deterministic for a fixed iteration order.
double compensated_sum(const std::vector<double>& values) {
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

}  // namespace

MonteCarloEstimate monte_carlo_distance(
    const std::function<double(const std::vector<double>&)>& f,
    const std::function<double(const std::vector<double>&)>& g, uint32_t dims,
    uint64_t samples, uint64_t seed, int workers) {
  if (samples < 2) throw std::invalid_argument("monte carlo needs at least 2 samples");

  std::vector<double> squares(samples);
  const auto sample_one = [&](uint64_t s) {
    std::vector<double> theta(dims);
    for (uint32_t j = 0; j < dims; ++j) {
      theta[j] = 2.0 * std::numbers::pi *
                 unit_from_bits(counter_rng(seed, s * uint64_t{dims} + j));
    }
    const double d = f(theta) - g(theta);
    squares[s] = d * d;
  };

#ifdef _OPENMP
  if (workers > 1) {
#pragma omp parallel for schedule(static) num_threads(workers)
    for (int64_t s = 0; s < static_cast<int64_t>(samples); ++s) {
      sample_one(static_cast<uint64_t>(s));
    }
  } else
#else
  (void)workers;
#endif
  {
    for (uint64_t s = 0; s < samples; ++s) sample_one(s);
  }

  const double total = compensated_sum(squares);
  const double mean = total / static_cast<double>(samples);
  MonteCarloEstimate est;
  est.distance = std::sqrt(std::max(0.0, mean));

  // Jackknife over the sqrt-of-mean estimator.
  const double nm1 = static_cast<double>(samples - 1);
  std::vector<double> loo(samples);
  for (uint64_t s = 0; s < samples; ++s) {
    loo[s] = std::sqrt(std::max(0.0, (total - squares[s]) / nm1));
  }
  const double loo_mean = compensated_sum(loo) / static_cast<double>(samples);
  double var = 0.0;
  for (uint64_t s = 0; s < samples; ++s) {
    const double d = loo[s] - loo_mean;
    var += d * d;
  }
  est.std_error = std::sqrt(var * nm1 / static_cast<double>(samples));
  return est;
}

NoiseSummary summarize_rotation_noise(const std::vector<LocalPauliNoise>& noises) {
  NoiseSummary s;
  if (noises.empty()) return s;
  s.p_prime = 1.0;
  s.p_prime_z = 1.0;
  for (const auto& nz : noises) {
    s.p_prime = std::min(s.p_prime, std::min(nz.p_x, nz.p_y));
    s.p_prime_z = std::min(s.p_prime_z, nz.p_z);
  }
  return s;
}

BoundPair theoretical_bound(uint32_t cutoff, const NoiseSummary& noise) {
  if (noise.p_prime <= 0 && noise.p_prime_z <= 0) {
    throw std::invalid_argument(
        "bound vacuous: requires p' > 0 or p'_z > 0 on every rotation");
  }
  if (noise.eta < 0 || noise.eta > 1) {
    throw std::invalid_argument("depolarizing rate eta out of [0,1]");
  }
  const double base =
      std::abs(1.0 - 2.0 * noise.p_prime - 2.0 * noise.p_prime_z) * (1.0 - noise.eta);
  BoundPair b;
  b.tight = std::pow(base, cutoff + 1);
  b.exponential = std::exp(-2.0 * (noise.p_prime + noise.p_prime_z) * cutoff);
  return b;
}

ChebyshevTail chebyshev_tail(double k, uint32_t cutoff, const NoiseSummary& noise) {
  if (k < 1) throw std::invalid_argument("chebyshev tail requires k >= 1");
  ChebyshevTail t;
  t.threshold = (1.0 + k) * std::exp(-2.0 * (noise.p_prime + noise.p_prime_z) * cutoff);
  t.probability = 1.0 / (k * k);
  return t;
}

namespace {

std::string format_coeff(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

}  // namespace

std::string serialize(const SurrogateSeries& s) {
  std::string out;
  out += "N " + std::to_string(s.meta.n) + "\n";
  out += "M " + std::to_string(s.meta.m) + "\n";
  out += "CUTOFF " + std::to_string(s.meta.cutoff) + "\n";
  out += "PARAMS " + std::to_string(s.meta.param_dim) + "\n";
  out += "OBS " + (s.meta.observable.empty() ? std::string("?") : s.meta.observable) + "\n";
  if (!s.meta.injective() || s.meta.param_dim != s.meta.m) {
    out += "SLOTS";
    for (uint32_t slot : s.meta.slot_map) {
      out += slot == kBoundSlot ? " -" : " " + std::to_string(slot);
    }
    out += "\n";
  }
  for (const auto& [omega, coeff] : s.terms) {
    out += "omega " + omega.to_text() + " coeff " + format_coeff(coeff) + "\n";
  }
  return out;
}

SurrogateSeries deserialize(const std::string& text) {
  std::istringstream in(text);
  SurrogateSeries s;
  std::string line;
  size_t line_no = 0;

  auto next_line = [&](std::vector<std::string>& tokens) -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      tokens.clear();
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) {
        if (tok[0] == '#') break;
        tokens.push_back(tok);
      }
      if (!tokens.empty()) return true;
    }
    return false;
  };

  auto expect_header = [&](const char* key) -> std::vector<std::string> {
    std::vector<std::string> tokens;
    if (!next_line(tokens) || tokens[0] != key) {
      throw ParseError(line_no == 0 ? 1 : line_no, std::string("expected header ") + key);
    }
    return tokens;
  };

  auto to_index = [&](const std::string& tok) -> uint32_t {
    try {
      size_t pos = 0;
      unsigned long v = std::stoul(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument("");
      return static_cast<uint32_t>(v);
    } catch (...) {
      throw ParseError(line_no, "expected a non-negative integer, got '" + tok + "'");
    }
  };

  auto header = expect_header("N");
  if (header.size() != 2) throw ParseError(line_no, "N takes one value");
  s.meta.n = to_index(header[1]);
  header = expect_header("M");
  if (header.size() != 2) throw ParseError(line_no, "M takes one value");
  s.meta.m = to_index(header[1]);
  header = expect_header("CUTOFF");
  if (header.size() != 2) throw ParseError(line_no, "CUTOFF takes one value");
  s.meta.cutoff = to_index(header[1]);
  header = expect_header("PARAMS");
  if (header.size() != 2) throw ParseError(line_no, "PARAMS takes one value");
  s.meta.param_dim = to_index(header[1]);
  header = expect_header("OBS");
  if (header.size() < 2) throw ParseError(line_no, "OBS takes a value");
  s.meta.observable = header[1];
  for (size_t i = 2; i < header.size(); ++i) s.meta.observable += " " + header[i];

  // Identity slot map unless a SLOTS line overrides it.
  s.meta.slot_map.resize(s.meta.m);
  for (uint32_t i = 0; i < s.meta.m; ++i) s.meta.slot_map[i] = i;
  if (s.meta.param_dim != s.meta.m) {
    s.meta.slot_map.assign(s.meta.m, kBoundSlot);
  }

  std::vector<std::string> tokens;
  bool more = next_line(tokens);
  if (more && tokens[0] == "SLOTS") {
    if (tokens.size() != s.meta.m + 1) {
      throw ParseError(line_no, "SLOTS needs exactly M entries");
    }
    for (uint32_t i = 0; i < s.meta.m; ++i) {
      const std::string& tok = tokens[i + 1];
      s.meta.slot_map[i] = tok == "-" ? kBoundSlot : to_index(tok);
      if (s.meta.slot_map[i] != kBoundSlot && s.meta.slot_map[i] >= s.meta.param_dim) {
        throw ParseError(line_no, "slot index out of range");
      }
    }
    more = next_line(tokens);
  } else if (s.meta.param_dim != s.meta.m) {
    throw ParseError(line_no == 0 ? 1 : line_no,
                     "PARAMS differs from M but no SLOTS line is present");
  }

  while (more) {
    if (tokens[0] != "omega") throw ParseError(line_no, "expected a term line");
    size_t pos = 1;
    FrequencyVector omega;
    if (pos < tokens.size() && tokens[pos] == "-") {
      ++pos;
    } else {
      while (pos < tokens.size() && tokens[pos] != "coeff") {
        const std::string& tok = tokens[pos];
        const size_t colon = tok.find(':');
        if (colon == std::string::npos) {
          throw ParseError(line_no, "expected index:value entry, got '" + tok + "'");
        }
        const uint32_t index = to_index(tok.substr(0, colon));
        const std::string val = tok.substr(colon + 1);
        int8_t v;
        if (val == "+1") {
          v = 1;
        } else if (val == "-1") {
          v = -1;
        } else {
          throw ParseError(line_no, "frequency value must be +1 or -1, got '" + val + "'");
        }
        try {
          omega.push(index, v);
        } catch (const std::invalid_argument& ex) {
          throw ParseError(line_no, ex.what());
        }
        ++pos;
      }
    }
    if (pos + 2 != tokens.size() || tokens[pos] != "coeff") {
      throw ParseError(line_no, "expected: omega <entries|-> coeff <value>");
    }
    double coeff;
    try {
      size_t end = 0;
      coeff = std::stod(tokens[pos + 1], &end);
      if (end != tokens[pos + 1].size()) throw std::invalid_argument("");
    } catch (...) {
      throw ParseError(line_no, "bad coefficient '" + tokens[pos + 1] + "'");
    }
    try {
      s.insert_term(std::move(omega), coeff);
    } catch (const std::exception& ex) {
      throw ParseError(line_no, ex.what());
    }
    more = next_line(tokens);
  }
  return s;
}

SurrogateSeries merge_weighted(
    const std::vector<std::pair<double, SurrogateSeries>>& parts,
    const std::string& observable_desc) {
  if (parts.empty()) throw std::invalid_argument("merge needs at least one series");
  SurrogateSeries out;
  out.meta = parts.front().second.meta;
  out.meta.observable = observable_desc;
  std::map<FrequencyVector, double> merged;
  for (const auto& [weight, series] : parts) {
    if (series.meta.m != out.meta.m || series.meta.cutoff != out.meta.cutoff ||
        series.meta.param_dim != out.meta.param_dim) {
      throw std::invalid_argument("cannot merge series over different circuits");
    }
    for (const auto& [omega, coeff] : series.terms) {
      merged[omega] += weight * coeff;
    }
  }
  for (auto& [omega, coeff] : merged) {
    if (std::abs(coeff) < kCoefficientDust) continue;
    out.terms.emplace(omega, coeff);
  }
  return out;
}

}  // namespace lowesa
