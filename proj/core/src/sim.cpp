// Copyright 2026 The Revcomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "revcomp/sim.hpp"

#include <algorithm>
#include <cmath>

namespace revcomp {

namespace {

constexpr int kOracleMaxQubits = 12;

CompiledGate compile_gate(const Gate& gate, int n_qubits) {
  CompiledGate cg{0, qubit_mask(n_qubits, gate.target())};
  for (int c : gate.controls()) cg.control_mask |= qubit_mask(n_qubits, c);
  return cg;
}

void check_gate(const Gate& gate, int n_qubits) {
  if (gate.max_qubit() >= n_qubits) {
    throw InvalidGateError("gate qubit " + std::to_string(gate.max_qubit()) +
                           " out of range for n=" + std::to_string(n_qubits));
  }
}

void check_target(int target, int n_qubits) {
  if (target < 0 || target >= n_qubits) {
    throw DimensionError("target qubit " + std::to_string(target) + " out of range for n=" +
                         std::to_string(n_qubits));
  }
}

void check_same_width(const SparseState& state, const Circuit& circuit) {
  if (state.n_qubits() != circuit.n_qubits()) {
    throw DimensionError("state is " + std::to_string(state.n_qubits()) + " qubits, circuit is " +
                         std::to_string(circuit.n_qubits()));
  }
}

SparseState permute_terms(const SparseState& state, std::span<const CompiledGate> gates) {
  std::vector<SparseState::Term> terms = state.terms();
  for (SparseState::Term& t : terms) t.key = apply_to_key(t.key, gates);
  // Gates permute keys injectively, so sorting restores the canonical form
  // without any merging.
  std::sort(terms.begin(), terms.end(),
            [](const SparseState::Term& a, const SparseState::Term& b) { return a.key < b.key; });
  return SparseState::unchecked(state.n_qubits(), std::move(terms));
}

}  // namespace

std::vector<CompiledGate> compile_circuit(const Circuit& circuit) {
  std::vector<CompiledGate> out;
  compile_circuit_into(circuit, out);
  return out;
}

void compile_circuit_into(const Circuit& circuit, std::vector<CompiledGate>& out) {
  out.clear();
  out.reserve(circuit.size());
  for (const Gate& g : circuit.gates()) out.push_back(compile_gate(g, circuit.n_qubits()));
}

SparseState apply_gate(const SparseState& state, const Gate& gate) {
  check_gate(gate, state.n_qubits());
  CompiledGate cg = compile_gate(gate, state.n_qubits());
  return permute_terms(state, {&cg, 1});
}

SparseState apply_circuit(const SparseState& state, const Circuit& circuit) {
  check_same_width(state, circuit);
  std::vector<CompiledGate> gates = compile_circuit(circuit);
  return permute_terms(state, gates);
}

double target_zero_mass(const SparseState& state, int target) {
  check_target(target, state.n_qubits());
  return mask_zero_mass(state, qubit_mask(state.n_qubits(), target));
}

double mask_zero_mass(const SparseState& state, BasisKey zero_mask) {
  double mass = 0.0;
  for (const SparseState::Term& t : state.terms()) {
    if ((t.key & zero_mask) == 0) mass += std::norm(t.amp);
  }
  return mass;
}

bool is_disentangled(const SparseState& state, int target) {
  check_target(target, state.n_qubits());
  return mask_disentangled(state, qubit_mask(state.n_qubits(), target));
}

bool mask_disentangled(const SparseState& state, BasisKey zero_mask) {
  for (const SparseState::Term& t : state.terms()) {
    if (t.key & zero_mask) return false;
  }
  return true;
}

double fitness(const Circuit& circuit, const TrainingSet& training, int target,
               double length_penalty) {
  check_target(target, training.n_qubits());
  return masked_fitness(circuit, training, qubit_mask(training.n_qubits(), target),
                        length_penalty);
}

double masked_fitness(const Circuit& circuit, const TrainingSet& training, BasisKey zero_mask,
                      double length_penalty) {
  if (circuit.n_qubits() != training.n_qubits()) {
    throw DimensionError("circuit is " + std::to_string(circuit.n_qubits()) +
                         " qubits, training set is " + std::to_string(training.n_qubits()));
  }
  thread_local std::vector<CompiledGate> gates;
  compile_circuit_into(circuit, gates);
  double total = 0.0;
  for (std::size_t j = 0; j < training.size(); ++j) {
    double mass = 0.0;
    for (const SparseState::Term& t : training.states()[j].terms()) {
      if ((apply_to_key(t.key, gates) & zero_mask) == 0) mass += std::norm(t.amp);
    }
    total += training.weights()[j] * mass;
  }
  return total - length_penalty * static_cast<double>(circuit.size());
}

std::vector<BasisKey> permutation_table(const Circuit& circuit) {
  if (circuit.n_qubits() > kOracleMaxQubits) {
    throw DimensionError("permutation_table supports at most " +
                         std::to_string(kOracleMaxQubits) + " qubits");
  }
  std::vector<CompiledGate> gates = compile_circuit(circuit);
  std::vector<BasisKey> table(std::size_t{1} << circuit.n_qubits());
  for (std::size_t j = 0; j < table.size(); ++j) {
    table[j] = apply_to_key(static_cast<BasisKey>(j), gates);
  }
  return table;
}

}  // namespace revcomp
