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
#include <vector>

#include "revcomp/types.hpp"

namespace revcomp {

// Circuits serialize as space-separated qubit tuples: "(t)" is X, "(t, c)" is
// CX, "(t, c1, c2)" is CCX; the target is always first. Tokens are emitted
// moment-major from an ASAP schedule with an ascending-target tiebreak inside
// each moment, which gives every circuit a canonical string usable for
// deduplication.

/// ASAP moment index per gate, aligned with circuit.gates(). Gates in one
/// moment act on pairwise disjoint qubits.
std::vector<int> moment_schedule(const Circuit& circuit);

std::string serialize_circuit(const Circuit& circuit);

/// Parses the tuple grammar; gate kind is inferred from tuple arity. Throws
/// ParseError (with byte offset) on malformed tuples, arity > 3, duplicate
/// indices, or indices >= n_qubits.
Circuit parse_circuit(const std::string& text, int n_qubits);

/// Writes `content` to `path` via a temp file and atomic rename.
void write_text_atomic(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

// ---- Circuit files (.rvc) -------------------------------------------------
// line 1: "revcomp-circuit v1"
// line 2: "n_qubits=<n>"
// line 3: the serialized gate string (may be empty)
// UTF-8, LF line endings.

void write_circuit_file(const std::string& path, const Circuit& circuit);
Circuit read_circuit_file(const std::string& path);

// ---- Training-set files (.json) -------------------------------------------

void write_training_file(const std::string& path, const TrainingSet& training);
TrainingSet read_training_file(const std::string& path);

// ---- Evolution traces (.jsonl) --------------------------------------------
// One record per generation:
//   {generation, best_fitness, best_gate_count, population_size,
//    stage?, evaluations?, support_snapshot?}
// `stage` appears in multi-stage compression traces; `evaluations` is the
// cumulative fitness-evaluation count; `support_snapshot` lists the best
// candidate's transformed support per training state as ket strings.

struct TraceRecord {
  int generation = 0;
  double best_fitness = 0.0;
  int best_gate_count = 0;
  int population_size = 0;
  int stage = -1;               // < 0: omitted
  std::int64_t evaluations = -1;  // < 0: omitted
  std::optional<std::vector<std::vector<std::string>>> support_snapshot;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

std::string trace_record_to_json(const TraceRecord& record);
TraceRecord trace_record_from_json(const std::string& line);

void write_trace_file(const std::string& path, const std::vector<TraceRecord>& records);
std::vector<TraceRecord> read_trace_file(const std::string& path);

// ---- Experiment summaries (.csv) -------------------------------------------
// Header: family,n_qubits,trash_requested,success,generations,x_count,
//         cx_count,ccx_count,seed
// Not-applicable cells (complement-equivalent m-particle sizes) are emitted
// with "-" in every column after n_qubits.

struct SummaryRow {
  std::string family;
  int n_qubits = 0;
  bool not_applicable = false;
  int trash_requested = 0;
  bool success = false;
  std::int64_t generations = 0;
  int x_count = 0;
  int cx_count = 0;
  int ccx_count = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

std::string summary_to_csv(const std::vector<SummaryRow>& rows);
void write_summary_file(const std::string& path, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_file(const std::string& path);

}  // namespace revcomp
