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

#include "lowesa/engine.hpp"

#include <algorithm>
#include <deque>

#include "lowesa/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lowesa {

std::optional<ModeAction> mode_action(int omega, Pauli p, const LocalPauliNoise& noise) {
  switch (omega) {
    case 0:
      if (p == Pauli::I) return ModeAction{1.0, Pauli::I};
      if (p == Pauli::Z) return ModeAction{noise.q_z, Pauli::Z};
      return std::nullopt;
    case 1:
      if (p == Pauli::X) return ModeAction{noise.q_x, Pauli::X};
      if (p == Pauli::Y) return ModeAction{noise.q_y, Pauli::Y};
      return std::nullopt;
    case -1:
      if (p == Pauli::X) return ModeAction{-noise.q_x, Pauli::Y};
      if (p == Pauli::Y) return ModeAction{noise.q_y, Pauli::X};
      return std::nullopt;
    default:
      throw std::invalid_argument("mode label must be 0, +1 or -1");
  }
}

uint64_t theoretical_path_count(uint32_t m, uint32_t cutoff, bool* saturated) {
  const uint64_t kMax = UINT64_MAX;
  bool sat = false;
  uint64_t total = 0;
  uint64_t binom = 1;  // C(m, i)
  const uint32_t top = std::min(cutoff, m);
  for (uint32_t i = 0; i <= top; ++i) {
    if (i > 0) {
      // binom <- binom * (m - i + 1) / i, exact at every step.
      if (!sat && __builtin_mul_overflow(binom, uint64_t{m - i + 1}, &binom)) sat = true;
      if (!sat) binom /= i;
    }
    uint64_t term = binom;
    if (!sat && i >= 64) sat = true;
    if (!sat && __builtin_mul_overflow(term, uint64_t{1} << i, &term)) sat = true;
    if (!sat && __builtin_add_overflow(total, term, &total)) sat = true;
    if (sat) break;
  }
  if (saturated) *saturated = sat;
  return sat ? kMax : total;
}

namespace {

// The circuit lowered to a reversed op sequence so the traversal inner loop
// is a flat switch. ops[0] is the last circuit element.
struct RevOp {
  enum class Tag : uint8_t { Gate, Rotation, Channel } tag;
  CliffordGate gate{};
  uint32_t qubit = 0;          // rotation target
  uint32_t rotation_index = 0;  // 0-based in circuit order
  LocalPauliNoise noise;
  const ChannelEigenvalueMap* channel = nullptr;
};

std::vector<RevOp> compile_reversed(const NoisyCircuit& c) {
  std::vector<RevOp> ops;
  ops.reserve(c.elements.size());
  uint32_t rotation_index = 0;
  for (const auto& e : c.elements) {
    RevOp op;
    if (const auto* g = std::get_if<CliffordGate>(&e)) {
      op.tag = RevOp::Tag::Gate;
      op.gate = *g;
    } else if (const auto* r = std::get_if<ParamRotation>(&e)) {
      op.tag = RevOp::Tag::Rotation;
      op.qubit = r->qubit;
      op.rotation_index = rotation_index++;
      op.noise = r->noise;
    } else {
      op.tag = RevOp::Tag::Channel;
      op.channel = &std::get<ChannelEigenvalueMap>(e);
    }
    ops.push_back(std::move(op));
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

struct Emission {
  FrequencyVector omega;
  double coeff;
};

// Advances a state until it branches or terminates.
enum class Advance { Annihilated, Completed, Branch };

Advance advance(const std::vector<RevOp>& ops, TraversalState& s) {
  while (s.next < ops.size()) {
    const RevOp& op = ops[s.next];
    switch (op.tag) {
      case RevOp::Tag::Gate:
        s.pauli = conjugate_adjoint(op.gate, s.pauli);
        break;
      case RevOp::Tag::Channel:
        s.factor *= channel_attenuation(*op.channel, s.pauli);
        if (s.factor == 0.0) return Advance::Annihilated;
        break;
      case RevOp::Tag::Rotation: {
        const Pauli comp = s.pauli.component_at(op.qubit);
        if (comp == Pauli::X || comp == Pauli::Y) return Advance::Branch;
        if (comp == Pauli::Z) {
          s.factor *= op.noise.q_z;
          if (s.factor == 0.0) return Advance::Annihilated;
        }
        break;
      }
    }
    ++s.next;
  }
  return Advance::Completed;
}

FrequencyVector canonical_omega(const TraversalState& s) {
  FrequencyVector omega;
  omega.entries.assign(s.choices.rbegin(), s.choices.rend());
  return omega;
}

// Depth-first walk from `root`, +1 branches before -1. Emissions are
// appended in traversal order; stats accumulate leaf counts.
void run_serial(const std::vector<RevOp>& ops, TraversalState root, uint32_t cutoff,
                std::vector<Emission>& out, PathStats& stats, uint64_t budget) {
  std::vector<TraversalState> stack;
  stack.push_back(std::move(root));
  while (!stack.empty()) {
    TraversalState s = std::move(stack.back());
    stack.pop_back();
    bool alive = true;
    while (alive) {
      const Advance result = advance(ops, s);
      if (result == Advance::Branch) {
        const RevOp& op = ops[s.next];
        const Pauli comp = s.pauli.component_at(op.qubit);
        if (s.weight == cutoff) {
          // Both continuations would exceed the cutoff.
          ++stats.explored;
          alive = false;
          break;
        }
        const auto plus = mode_action(+1, comp, op.noise);
        const auto minus = mode_action(-1, comp, op.noise);
        TraversalState other = s;
        ++s.weight;
        ++s.next;
        s.choices.emplace_back(op.rotation_index, int8_t{1});
        s.factor *= plus->factor;
        // pauli component unchanged on the +1 branch

        ++other.weight;
        ++other.next;
        other.choices.emplace_back(op.rotation_index, int8_t{-1});
        other.factor *= minus->factor;
        other.pauli.set_component(op.qubit, minus->pauli);

        const bool sdead = s.factor == 0.0;
        const bool odead = other.factor == 0.0;
        if (odead) {
          ++stats.explored;
        } else {
          stack.push_back(std::move(other));
        }
        if (sdead) {
          ++stats.explored;
          alive = false;
        }
        continue;
      }
      ++stats.explored;
      if (result == Advance::Completed) {
        ++stats.completed;
        const double coeff = s.factor * zero_state_expectation(s.pauli);
        if (coeff != 0.0) {
          ++stats.emitted;
          out.push_back(Emission{canonical_omega(s), coeff});
        }
      }
      alive = false;
    }
    if (budget != 0 && stats.explored > budget) {
      throw BudgetExceeded("path budget of " + std::to_string(budget) +
                           " exceeded during back-propagation");
    }
  }
}

SeriesMeta make_meta(const NoisyCircuit& c, const PauliString& obs, uint32_t cutoff) {
  SeriesMeta meta;
  meta.n = c.n;
  meta.m = c.rotation_count();
  meta.cutoff = cutoff;
  meta.param_dim = c.param_dim();
  meta.slot_map = c.rotation_slots();
  meta.observable = obs.to_text();
  return meta;
}

}  // namespace

BackpropResult backpropagate(const NoisyCircuit& c, const PauliString& obs,
                             uint32_t cutoff, int workers, uint64_t path_budget) {
  validate_or_throw(c);
  if (obs.n != c.n) {
    throw std::invalid_argument("observable has " + std::to_string(obs.n) +
                                " qubits but the circuit has " + std::to_string(c.n));
  }

  const auto ops = compile_reversed(c);
  BackpropResult result;
  result.series.meta = make_meta(c, obs, cutoff);
  result.stats.theoretical =
      theoretical_path_count(result.series.meta.m, cutoff, &result.stats.saturated);

  TraversalState root;
  root.pauli = obs;

  std::vector<Emission> emissions;

#ifdef _OPENMP
  if (workers > 1 && path_budget == 0) {
    // Expand a frontier of independent subtrees breadth-first, then process
    // them in parallel. Leaves reached during expansion are handled inline.
    std::deque<TraversalState> frontier;
    frontier.push_back(std::move(root));
    const size_t target = std::max<size_t>(256, static_cast<size_t>(workers) * 32);
    bool grew = true;
    while (grew && frontier.size() < target) {
      grew = false;
      const size_t level = frontier.size();
      for (size_t i = 0; i < level; ++i) {
        TraversalState s = std::move(frontier.front());
        frontier.pop_front();
        const Advance outcome = advance(ops, s);
        if (outcome == Advance::Branch && s.weight < cutoff) {
          const RevOp& op = ops[s.next];
          const Pauli comp = s.pauli.component_at(op.qubit);
          const auto plus = mode_action(+1, comp, op.noise);
          const auto minus = mode_action(-1, comp, op.noise);
          TraversalState other = s;
          ++s.weight;
          ++s.next;
          s.choices.emplace_back(op.rotation_index, int8_t{1});
          s.factor *= plus->factor;
          ++other.weight;
          ++other.next;
          other.choices.emplace_back(op.rotation_index, int8_t{-1});
          other.factor *= minus->factor;
          other.pauli.set_component(op.qubit, minus->pauli);
          if (s.factor != 0.0) {
            frontier.push_back(std::move(s));
            grew = true;
          } else {
            ++result.stats.explored;
          }
          if (other.factor != 0.0) {
            frontier.push_back(std::move(other));
            grew = true;
          } else {
            ++result.stats.explored;
          }
        } else if (outcome == Advance::Branch) {
          ++result.stats.explored;  // cutoff reached at a split
        } else {
          ++result.stats.explored;
          if (outcome == Advance::Completed) {
            ++result.stats.completed;
            const double coeff = s.factor * zero_state_expectation(s.pauli);
            if (coeff != 0.0) {
              ++result.stats.emitted;
              emissions.push_back(Emission{canonical_omega(s), coeff});
            }
          }
        }
      }
    }

    std::vector<TraversalState> roots(frontier.begin(), frontier.end());
    std::vector<std::vector<Emission>> local(roots.size());
    std::vector<PathStats> local_stats(roots.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (int64_t i = 0; i < static_cast<int64_t>(roots.size()); ++i) {
      run_serial(ops, std::move(roots[i]), cutoff, local[i], local_stats[i], 0);
    }
    for (size_t i = 0; i < roots.size(); ++i) {
      result.stats.explored += local_stats[i].explored;
      result.stats.completed += local_stats[i].completed;
      result.stats.emitted += local_stats[i].emitted;
      for (auto& e : local[i]) emissions.push_back(std::move(e));
    }
  } else
#else
  (void)workers;
#endif
  {
    run_serial(ops, std::move(root), cutoff, emissions, result.stats, path_budget);
  }

  for (auto& e : emissions) {
    auto [it, inserted] = result.series.terms.emplace(std::move(e.omega), e.coeff);
    (void)it;
    if (!inserted) {
      throw std::logic_error("distinct paths produced the same frequency vector");
    }
  }
  return result;
}

PathStats path_stats(const NoisyCircuit& c, const PauliString& obs, uint32_t cutoff) {
  return backpropagate(c, obs, cutoff).stats;
}

}  // namespace lowesa
