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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "revcomp/codec.hpp"
#include "revcomp/rng.hpp"
#include "revcomp/types.hpp"

namespace revcomp {

/// (mu + lambda) evolutionary search parameters. Survivor selection keeps the
/// best population_size of parents plus children under canonical-string
/// deduplication, refilled with fresh random candidates when deduplication
/// shrinks the pool.
struct EAParams {
  int population_size = 100;         // mu_total
  int parent_count = 20;             // mu
  int children_per_generation = 80;  // lambda
  std::array<double, 5> mutation_weights{2, 1, 0.3, 1, 2};  // add,remove,permute,repeat,replace
  int init_max_length = 0;           // 0: resolved to 2 * n_qubits
  int max_generations = 1000;
  int restarts = 5;                  // independent attempts, seeds seed+0 .. seed+restarts-1
  double length_penalty = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// A circuit inside the EA with its cached fitness and canonical string.
struct Candidate {
  Circuit circuit;
  double fitness = 0.0;
  std::string canonical_key;
  std::int64_t birth_order = 0;
};

struct EAResult {
  Candidate best;
  bool success = false;      // combinatorial disentanglement on all states
  int generations_used = 0;  // in the attempt that produced `best`
  int attempts_used = 0;
  std::int64_t evaluations_used = 0;  // across all attempts
  std::vector<TraceRecord> trace;     // from the attempt that produced `best`
};

struct EaOptions {
  /// Qubits that must stay cleared while the target is disentangled; the
  /// fitness and the stopping check cover target plus these.
  std::vector<int> protected_qubits;
  bool snapshot_support = false;
  int stage_index = -1;  // stamped into trace records when >= 0
};

/// Uniform over valid kinds for the width, then uniform over valid distinct
/// qubit tuples.
Gate random_gate(int n_qubits, Rng& rng);
Circuit random_circuit(int n_qubits, int length, Rng& rng);

/// population_size candidates with lengths uniform in [1, init_max_length];
/// canonical-key duplicates are regenerated (up to 100 attempts, then kept).
/// Fitness fields are left unset; the EA evaluates them.
std::vector<Candidate> init_population(const EAParams& params, int n_qubits, Rng& rng);

// The five genetic operations. Operations that need gates fall back to
// mutate_add on an empty circuit. k draws are uniform in [1, min(3, length)].
Circuit mutate_add(const Circuit& circuit, Rng& rng);      // one gate, random position
Circuit mutate_remove(const Circuit& circuit, Rng& rng);   // k gates removed, order kept
Circuit mutate_permute(const Circuit& circuit, Rng& rng);  // uniformly random reordering
Circuit mutate_repeat(const Circuit& circuit, Rng& rng);   // k existing gates re-inserted
Circuit mutate_replace(const Circuit& circuit, Rng& rng);  // k positions freshly resampled

/// Evolves a circuit that drives the target qubit of every training state to
/// |0>. Ranking is fitness desc, then gate count asc, then birth order asc.
/// Runs up to params.restarts independent attempts (seeds seed+i) and returns
/// the best result across them. Deterministic for equal inputs.
EAResult ea_disentangle(const TrainingSet& training, int target, const EAParams& params,
                        const EaOptions& options = {});

/// Baseline: samples `budget` random circuits of length <= max_length
/// (optionally prefixed by a seeded CNOT cascade along a random qubit chain)
/// and returns the best. Trace records are emitted on improvement only, with
/// `generation` holding the sample index.
EAResult random_search(const TrainingSet& training, int target, std::int64_t budget,
                       int max_length, std::uint64_t seed, bool cascade_prefix = true);

}  // namespace revcomp
