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

#include "revcomp/compressor.hpp"

#include <algorithm>
#include <set>

#include "revcomp/rng.hpp"
#include "revcomp/sim.hpp"

namespace revcomp {

namespace {

constexpr int kOracleMaxQubits = 12;

TrainingSet transform(const TrainingSet& training, const Circuit& circuit) {
  std::vector<SparseState> states;
  states.reserve(training.size());
  for (const SparseState& s : training.states()) states.push_back(apply_circuit(s, circuit));
  return TrainingSet(std::move(states), training.weights());
}

void validate_plan(const CompressionPlan& plan) {
  plan.ea_params.validate();
  const int n = plan.training.n_qubits();
  if (plan.target.trash_count != static_cast<int>(plan.target.trash_qubits.size())) {
    throw InvalidInputError("trash_count disagrees with trash_qubits length");
  }
  qubits_mask(n, plan.target.trash_qubits);  // range + distinctness
  if (plan.target.trash_count > max_trash_count(plan.training)) {
    throw InfeasibleTargetError("trash set exceeds the union-support budget");
  }
}

int pick_greedy(const TrainingSet& current, const std::vector<int>& remaining) {
  int best = remaining.front();
  double best_mass = -1.0;
  for (int q : remaining) {
    double mass = 0.0;
    for (std::size_t j = 0; j < current.size(); ++j) {
      mass += current.weights()[j] * target_zero_mass(current.states()[j], q);
    }
    if (mass > best_mass + 1e-15) {
      best_mass = mass;
      best = q;
    }
  }
  return best;
}

}  // namespace

bool VerificationReport::passed() const {
  if (trash_cleared.empty()) return false;
  for (bool ok : trash_cleared) {
    if (!ok) return false;
  }
  if (!injective_on_support) return false;
  if (oracle_checked && !oracle_equivalent) return false;
  return true;
}

CompressionResult compress(const CompressionPlan& plan) {
  validate_plan(plan);
  const int n = plan.training.n_qubits();

  CompressionResult result;
  result.trash_requested = plan.target.trash_count;
  result.seed = plan.ea_params.seed;
  result.full_circuit = Circuit(n);

  TrainingSet current = plan.training;
  std::vector<int> cleared;
  std::vector<int> remaining = plan.target.trash_qubits;

  int stage_index = 0;
  while (!remaining.empty()) {
    int target = plan.order == OrderStrategy::Greedy ? pick_greedy(current, remaining)
                                                     : remaining.front();
    remaining.erase(std::find(remaining.begin(), remaining.end(), target));

    EAParams stage_params = plan.ea_params;
    stage_params.seed = mix_seed(plan.ea_params.seed, static_cast<std::uint64_t>(stage_index));
    EaOptions options;
    options.protected_qubits = cleared;
    options.snapshot_support = plan.snapshot_support;
    options.stage_index = stage_index;

    EAResult stage = ea_disentangle(current, target, stage_params, options);
    result.total_steps += stage.generations_used;
    result.total_evaluations += stage.evaluations_used;
    result.trace.insert(result.trace.end(), stage.trace.begin(), stage.trace.end());
    result.stage_targets.push_back(target);
    result.stage_circuits.push_back(stage.best.circuit);

    if (!stage.success) {
      result.success = false;
      result.failed_qubit = target;
      result.full_circuit = result.full_circuit.then(stage.best.circuit);
      result.gate_histogram = result.full_circuit.histogram();
      result.verification = verify(result.full_circuit, plan.training, plan.target);
      return result;
    }

    current = transform(current, stage.best.circuit);
    result.full_circuit = result.full_circuit.then(stage.best.circuit);
    cleared.push_back(target);
    ++stage_index;
  }

  result.gate_histogram = result.full_circuit.histogram();
  result.verification = verify(result.full_circuit, plan.training, plan.target);
  result.success = result.verification.passed();
  return result;
}

VerificationReport verify(const Circuit& full_circuit, const TrainingSet& training,
                          const CompressionTarget& target) {
  if (full_circuit.n_qubits() != training.n_qubits()) {
    throw DimensionError("circuit and training set disagree on n_qubits");
  }
  const int n = training.n_qubits();
  BasisKey trash_mask = qubits_mask(n, target.trash_qubits);
  std::vector<CompiledGate> gates = compile_circuit(full_circuit);

  VerificationReport report;
  report.trash_cleared.reserve(training.size());
  bool single_basis = true;
  for (const SparseState& s : training.states()) {
    bool ok = true;
    for (const SparseState::Term& t : s.terms()) {
      if (apply_to_key(t.key, gates) & trash_mask) ok = false;
    }
    report.trash_cleared.push_back(ok);
    if (s.support_size() != 1) single_basis = false;
  }

  // Injectivity on the union support; automatic for a permutation but
  // asserted independently.
  std::vector<BasisKey> support = training.union_support();
  std::set<BasisKey> images;
  bool injective = true;
  for (BasisKey k : support) {
    if (!images.insert(apply_to_key(k, gates)).second) injective = false;
  }
  report.injective_on_support = injective;

  if (n <= kOracleMaxQubits) {
    report.oracle_checked = true;
    std::vector<BasisKey> table = permutation_table(full_circuit);
    bool ok = true;
    for (BasisKey k : support) {
      if (table[k] != apply_to_key(k, gates)) ok = false;
    }
    std::vector<BasisKey> sorted = table;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t j = 0; j < sorted.size(); ++j) {
      if (sorted[j] != static_cast<BasisKey>(j)) ok = false;
    }
    report.oracle_equivalent = ok;
  }

  if (single_basis) {
    report.mapping.reserve(training.size());
    for (const SparseState& s : training.states()) {
      BasisKey in = s.terms().front().key;
      report.mapping.emplace_back(ket_string(in, n), ket_string(apply_to_key(in, gates), n));
    }
  }
  return report;
}

SparseState decode(const SparseState& compressed, const Circuit& full_circuit,
                   const CompressionTarget& target) {
  if (compressed.n_qubits() != full_circuit.n_qubits()) {
    throw DimensionError("state and circuit disagree on n_qubits");
  }
  BasisKey trash_mask = qubits_mask(compressed.n_qubits(), target.trash_qubits);
  for (const SparseState::Term& t : compressed.terms()) {
    if (t.key & trash_mask) {
      throw InvalidInputError("compressed state has a nonzero trash bit in |" +
                              ket_string(t.key, compressed.n_qubits()) + ">");
    }
  }
  return apply_circuit(compressed, full_circuit.inverse());
}

std::vector<SummaryRow> summarize(const std::vector<std::optional<CompressionResult>>& results,
                                  const std::vector<FamilySpec>& specs) {
  if (results.size() != specs.size()) {
    throw InvalidInputError("summarize requires aligned results and specs");
  }
  std::vector<SummaryRow> rows;
  rows.reserve(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    SummaryRow row;
    row.family = specs[i].label();
    row.n_qubits = specs[i].n_qubits;
    if (!results[i].has_value()) {
      row.not_applicable = true;
    } else {
      const CompressionResult& r = *results[i];
      row.trash_requested = r.trash_requested;
      row.success = r.success;
      row.generations = r.total_steps;
      row.x_count = r.gate_histogram.x;
      row.cx_count = r.gate_histogram.cx;
      row.ccx_count = r.gate_histogram.ccx;
      row.seed = r.seed;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace revcomp
