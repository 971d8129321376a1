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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "revcomp/codec.hpp"
#include "revcomp/evolution.hpp"
#include "revcomp/families.hpp"
#include "revcomp/types.hpp"

namespace revcomp {

enum class OrderStrategy { Fixed, Greedy };

/// Outer-loop plan: disentangle each trash qubit in turn and concatenate the
/// stage circuits. Greedy order picks the remaining trash qubit with the
/// highest current zero mass first.
struct CompressionPlan {
  TrainingSet training;
  CompressionTarget target;
  EAParams ea_params;
  OrderStrategy order = OrderStrategy::Fixed;
  bool snapshot_support = false;
};

struct VerificationReport {
  std::vector<bool> trash_cleared;  // per training state
  bool injective_on_support = false;
  bool oracle_checked = false;      // dense cross-check ran (n_qubits <= 12)
  bool oracle_equivalent = false;
  /// input ket -> output ket, present when every training state is a single
  /// basis state.
  std::vector<std::pair<std::string, std::string>> mapping;

  bool passed() const;
};

struct CompressionResult {
  std::vector<int> stage_targets;       // trash qubits in disentangling order
  std::vector<Circuit> stage_circuits;  // one per stage, may be empty
  Circuit full_circuit;                 // concatenation of the stages
  bool success = false;
  int failed_qubit = -1;  // trash qubit whose stage failed, -1 if none
  VerificationReport verification;
  GateHistogram gate_histogram;
  std::int64_t total_steps = 0;        // generations across stages
  std::int64_t total_evaluations = 0;  // fitness evaluations across stages
  std::vector<TraceRecord> trace;      // stage traces in order, stage stamped
  int trash_requested = 0;
  std::uint64_t seed = 0;
};

/// Runs the per-stage evolutionary search. Stage i protects the qubits
/// cleared by stages 0..i-1, so later stages cannot re-entangle them. An
/// already-disentangled qubit yields an empty stage circuit. On stage failure
/// the partial result is returned with success=false and the failing qubit
/// identified.
CompressionResult compress(const CompressionPlan& plan);

/// Re-checks a finished circuit against the original training states: trash
/// bits clear per state, injectivity on the union support, and (n <= 12) an
/// exact cross-check against the dense permutation table.
VerificationReport verify(const Circuit& full_circuit, const TrainingSet& training,
                          const CompressionTarget& target);

/// Runs the inverse circuit; requires all trash bits of the input to be 0.
/// decode(apply_circuit(s, c), c, t) == s exactly.
SparseState decode(const SparseState& compressed, const Circuit& full_circuit,
                   const CompressionTarget& target);

/// One summary row per (result, spec) pair; a nullopt result marks a
/// not-applicable cell and becomes a "-" row.
std::vector<SummaryRow> summarize(const std::vector<std::optional<CompressionResult>>& results,
                                  const std::vector<FamilySpec>& specs);

}  // namespace revcomp
