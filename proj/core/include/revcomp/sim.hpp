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

#pragma once

#include <span>
#include <vector>

#include "revcomp/types.hpp"

namespace revcomp {

// Gates from {X, CX, CCX} permute basis states: a key is replaced by the key
// with the target bit flipped iff all control bits are 1. A circuit therefore
// never changes the support size or the amplitude multiset, which is what
// makes exact sparse simulation possible.

/// A gate lowered to bit masks for a fixed register width.
struct CompiledGate {
  BasisKey control_mask;
  BasisKey target_mask;
};

std::vector<CompiledGate> compile_circuit(const Circuit& circuit);
void compile_circuit_into(const Circuit& circuit, std::vector<CompiledGate>& out);

inline BasisKey apply_to_key(BasisKey key, std::span<const CompiledGate> gates) {
  for (const CompiledGate& g : gates) {
    if ((key & g.control_mask) == g.control_mask) key ^= g.target_mask;
  }
  return key;
}

/// Truth-table update of every basis key. Amplitudes are carried unchanged.
SparseState apply_gate(const SparseState& state, const Gate& gate);

/// Left fold of apply_gate over the circuit's gates.
SparseState apply_circuit(const SparseState& state, const Circuit& circuit);

/// Probability mass on support elements whose target bit is 0.
double target_zero_mass(const SparseState& state, int target);

/// Probability mass on support elements with all bits of `zero_mask` clear.
/// `zero_mask` is in machine-bit positions (see qubits_mask).
double mask_zero_mass(const SparseState& state, BasisKey zero_mask);

/// Exact combinatorial check: every support element has target bit 0.
bool is_disentangled(const SparseState& state, int target);

bool mask_disentangled(const SparseState& state, BasisKey zero_mask);

/// Weighted mean of target_zero_mass over the transformed training states,
/// minus length_penalty * gate_count. With zero penalty the value lies in
/// [0, 1] and equals 1 exactly when every transformed state is disentangled
/// at the target.
double fitness(const Circuit& circuit, const TrainingSet& training, int target,
               double length_penalty = 0.0);

/// fitness() generalized to a set of bits that must all read 0; used by the
/// compressor to keep previously cleared qubits clear.
double masked_fitness(const Circuit& circuit, const TrainingSet& training,
                      BasisKey zero_mask, double length_penalty = 0.0);

/// Dense oracle: image of every basis state under the circuit. The result is
/// a permutation of 0..2^n-1. Guarded to n_qubits <= 12.
std::vector<BasisKey> permutation_table(const Circuit& circuit);

}  // namespace revcomp
