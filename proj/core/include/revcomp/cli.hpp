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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "revcomp/compressor.hpp"
#include "revcomp/evolution.hpp"
#include "revcomp/families.hpp"

namespace revcomp::cli {

// Stable exit codes shared by every subcommand.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerifyFailure = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitSearchFailure = 3;

struct EaOverrides {
  std::optional<int> population_size;
  std::optional<int> parent_count;
  std::optional<int> children_per_generation;
  std::optional<int> max_generations;
  std::optional<int> restarts;
  std::optional<double> length_penalty;
  std::optional<std::array<double, 5>> mutation_weights;

  EAParams apply(EAParams base) const;
};

struct GenOptions {
  FamilySpec spec;
  std::string out_path;  // empty: derived from the spec label
};

struct CompressOptions {
  std::optional<FamilySpec> spec;  // exactly one of spec / training_path
  std::string training_path;
  std::optional<int> trash_count;
  std::vector<int> trash_qubits;  // overrides trash_count when non-empty
  EaOverrides ea;
  OrderStrategy order = OrderStrategy::Fixed;
  std::uint64_t seed = 0;
  int repetitions = 1;  // seeds seed, seed+1, ...
  std::string out_dir = "out";
  bool snapshots = false;
  bool verbose = false;
};

struct VerifyOptions {
  std::string circuit_path;
  std::optional<FamilySpec> spec;
  std::string training_path;
  std::optional<int> trash_count;
  std::vector<int> trash_qubits;
  bool oracle = false;  // insist on the dense cross-check
};

struct SimulateOptions {
  std::string circuit_path;
  std::string ket;            // single basis-state input, e.g. "11000"
  std::string training_path;  // or: every state of a stored training set
};

struct ReproduceOptions {
  std::string figure;  // "fig5" | "fig7"
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int max_n = 6;          // fig7 family sizes are capped at this width
  int cell_attempts = 4;  // whole-compression reruns per cell, seeds derived
  bool verbose = false;
};

int run_gen(const GenOptions& options, std::ostream& out, std::ostream& err);
int run_compress(const CompressOptions& options, std::ostream& out, std::ostream& err);
int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);
int run_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);
int run_reproduce(const ReproduceOptions& options, std::ostream& out, std::ostream& err);

}  // namespace revcomp::cli
