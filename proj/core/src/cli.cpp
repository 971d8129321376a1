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

#include "revcomp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <ostream>

#include "revcomp/rng.hpp"
#include "revcomp/sim.hpp"

namespace revcomp::cli {

namespace {

namespace fs = std::filesystem;

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}

std::string format_mass(double mass) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", mass);
  return buf;
}

TrainingSet load_training(const std::optional<FamilySpec>& spec,
                          const std::string& training_path) {
  if (spec.has_value() == !training_path.empty()) {
    throw InvalidInputError("provide exactly one of a --family spec or --training file");
  }
  if (spec) return generate(*spec);
  return read_training_file(training_path);
}

CompressionTarget resolve_target(const TrainingSet& training, std::optional<int> trash_count,
                                 const std::vector<int>& trash_qubits) {
  if (!trash_qubits.empty()) return target_with_qubits(training, trash_qubits);
  return default_target(training, trash_count);
}

void print_result_line(std::ostream& out, const std::string& tag, const CompressionResult& r) {
  out << tag << ": " << (r.success ? "success" : "FAILED");
  if (!r.success && r.failed_qubit >= 0) out << " at trash qubit " << r.failed_qubit;
  out << " (" << r.total_steps << " generations, gates " << r.gate_histogram.x << "x/"
      << r.gate_histogram.cx << "cx/" << r.gate_histogram.ccx << "ccx)\n";
}

void print_stage_details(std::ostream& out, const CompressionResult& r) {
  for (std::size_t i = 0; i < r.stage_circuits.size(); ++i) {
    out << "  stage " << i << ": qubit " << r.stage_targets[i] << ", "
        << r.stage_circuits[i].size() << " gates\n";
  }
}

struct CellOutcome {
  FamilySpec spec;
  std::optional<CompressionResult> result;  // nullopt: not applicable
};

EAParams fig7_params(const FamilySpec& spec) {
  EAParams params;
  switch (spec.kind) {
    case FamilyKind::Ghz: params.max_generations = 200; break;
    case FamilyKind::Unary: params.max_generations = spec.n_qubits <= 6 ? 500 : 2000; break;
    case FamilyKind::RandomSupport: params.max_generations = 1000; break;
    case FamilyKind::Prime: params.max_generations = 1000; break;
    case FamilyKind::MParticle:
      // Multi-stage m-particle cells pack the kept qubits almost perfectly;
      // they want the extended budget, a larger population, and longer
      // initial circuits.
      params.max_generations = 3000;
      params.population_size = 200;
      params.parent_count = 40;
      params.children_per_generation = 160;
      params.init_max_length = 4 * spec.n_qubits;
      break;
  }
  return params;
}

/// Heuristic reruns: a failed stage usually means the earlier stages settled
/// on circuits that leave an unsolvable endgame, so rerun the whole cell with
/// a freshly derived seed rather than hammering the same instance.
CompressionResult compress_with_attempts(const CompressionPlan& base, std::uint64_t cell_seed,
                                         int attempts, int* attempts_used) {
  CompressionResult result;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    CompressionPlan plan = base;
    plan.ea_params.seed = mix_seed(cell_seed, static_cast<std::uint64_t>(attempt));
    CompressionResult candidate = compress(plan);
    if (attempt == 0 || candidate.success) result = std::move(candidate);
    if (attempts_used) *attempts_used = attempt + 1;
    if (result.success) break;
  }
  return result;
}

}  // namespace

EAParams EaOverrides::apply(EAParams base) const {
  if (population_size) base.population_size = *population_size;
  if (parent_count) base.parent_count = *parent_count;
  if (children_per_generation) base.children_per_generation = *children_per_generation;
  if (max_generations) base.max_generations = *max_generations;
  if (restarts) base.restarts = *restarts;
  if (length_penalty) base.length_penalty = *length_penalty;
  if (mutation_weights) base.mutation_weights = *mutation_weights;
  return base;
}

int run_gen(const GenOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    try {
      options.spec.validate();
    } catch (const InvalidSpecError& e) {
      err << "error: " << e.what() << "\n";
      if (options.spec.kind == FamilyKind::MParticle &&
          options.spec.m > options.spec.n_qubits / 2 &&
          options.spec.n_qubits - options.spec.m >= 1) {
        err << "hint: compress the complement instead: --m "
            << (options.spec.n_qubits - options.spec.m) << "\n";
      }
      return kExitInvalidInput;
    }
    TrainingSet training = generate(options.spec);
    std::string path = options.out_path.empty()
                           ? options.spec.label() + "_n" + std::to_string(options.spec.n_qubits) +
                                 ".json"
                           : options.out_path;
    write_training_file(path, training);

    std::vector<BasisKey> support = training.union_support();
    out << "family: " << options.spec.label() << "\n";
    out << "n_qubits: " << training.n_qubits() << "\n";
    out << "states: " << training.size() << "\n";
    out << "union support: " << support.size() << "\n";
    if (support.size() <= 64) {
      out << "support:";
      for (BasisKey k : support) {
        out << " |" << ket_string(k, training.n_qubits()) << "> (" << k << ")";
      }
      out << "\n";
    }
    out << "trash budget: " << max_trash_count(training) << "\n";
    out << "wrote " << path << "\n";
    return kExitSuccess;
  });
}

int run_compress(const CompressOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (options.repetitions < 1) throw InvalidInputError("repetitions must be positive");
    TrainingSet training = load_training(options.spec, options.training_path);
    CompressionTarget target =
        resolve_target(training, options.trash_count, options.trash_qubits);
    std::string family = options.spec ? options.spec->label() : "custom";

    std::vector<std::optional<CompressionResult>> results;
    std::vector<FamilySpec> specs;
    bool all_success = true;
    for (int rep = 0; rep < options.repetitions; ++rep) {
      CompressionPlan plan{training, target, options.ea.apply(EAParams{}), options.order,
                           options.snapshots};
      plan.ea_params.seed = options.seed + static_cast<std::uint64_t>(rep);

      CompressionResult result = compress(plan);
      all_success = all_success && result.success;

      std::string suffix = options.repetitions > 1 ? "_r" + std::to_string(rep) : "";
      fs::path dir(options.out_dir);
      write_circuit_file((dir / ("circuit" + suffix + ".rvc")).string(), result.full_circuit);
      write_trace_file((dir / ("trace" + suffix + ".jsonl")).string(), result.trace);

      print_result_line(out, family + " n=" + std::to_string(training.n_qubits()) + " rep " +
                                 std::to_string(rep),
                        result);
      if (options.verbose) print_stage_details(out, result);

      FamilySpec spec = options.spec.value_or(
          FamilySpec{FamilyKind::Unary, training.n_qubits(), 0, 0, 0});
      specs.push_back(spec);
      results.push_back(std::move(result));
    }
    std::vector<SummaryRow> rows = summarize(results, specs);
    if (!options.spec) {
      for (SummaryRow& row : rows) row.family = family;
    }
    write_summary_file((fs::path(options.out_dir) / "summary.csv").string(), rows);
    return all_success ? kExitSuccess : kExitSearchFailure;
  });
}

int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    Circuit circuit = read_circuit_file(options.circuit_path);
    TrainingSet training = load_training(options.spec, options.training_path);
    if (circuit.n_qubits() != training.n_qubits()) {
      throw DimensionError("circuit width " + std::to_string(circuit.n_qubits()) +
                           " does not match training width " +
                           std::to_string(training.n_qubits()));
    }
    CompressionTarget target =
        resolve_target(training, options.trash_count, options.trash_qubits);
    if (options.oracle && training.n_qubits() > 12) {
      throw InvalidInputError("--oracle requires n_qubits <= 12");
    }
    VerificationReport report = verify(circuit, training, target);

    std::size_t cleared = 0;
    for (bool ok : report.trash_cleared) cleared += ok ? 1 : 0;
    out << "trash cleared: " << cleared << "/" << report.trash_cleared.size() << " states\n";
    out << "injective on support: " << (report.injective_on_support ? "yes" : "NO") << "\n";
    if (report.oracle_checked) {
      out << "dense oracle agreement: " << (report.oracle_equivalent ? "yes" : "NO") << "\n";
    } else {
      out << "dense oracle agreement: skipped (n > 12)\n";
    }
    for (const auto& [in, image] : report.mapping) {
      out << "|" << in << "> -> |" << image << ">\n";
    }
    out << (report.passed() ? "PASS\n" : "FAIL\n");
    return report.passed() ? kExitSuccess : kExitVerifyFailure;
  });
}

int run_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    Circuit circuit = read_circuit_file(options.circuit_path);
    std::vector<SparseState> inputs;
    if (!options.ket.empty()) {
      if (!options.training_path.empty()) {
        throw InvalidInputError("provide either --ket or --training, not both");
      }
      if (static_cast<int>(options.ket.size()) != circuit.n_qubits()) {
        throw DimensionError("ket width " + std::to_string(options.ket.size()) +
                             " does not match circuit width " +
                             std::to_string(circuit.n_qubits()));
      }
      inputs.push_back(SparseState::basis(circuit.n_qubits(), parse_ket(options.ket)));
    } else if (!options.training_path.empty()) {
      TrainingSet training = read_training_file(options.training_path);
      inputs = training.states();
    } else {
      throw InvalidInputError("provide a --ket or a --training file to simulate");
    }
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const SparseState& s = inputs[i];
      if (s.n_qubits() != circuit.n_qubits()) {
        throw DimensionError("state width does not match circuit width");
      }
      SparseState mapped = apply_circuit(s, circuit);
      if (inputs.size() > 1) out << "state " << i << ":\n";
      for (const SparseState::Term& t : mapped.terms()) {
        out << "|" << ket_string(t.key, mapped.n_qubits())
            << ">  p=" << format_mass(std::norm(t.amp)) << "\n";
      }
    }
    return kExitSuccess;
  });
}

namespace {

int reproduce_fig5(const ReproduceOptions& options, std::ostream& out) {
  FamilySpec spec{FamilyKind::Unary, 6, 0, 0, 0};
  TrainingSet training = gen_unary(6);
  CompressionPlan plan{training, default_target(training, std::nullopt), EAParams{},
                       OrderStrategy::Fixed, /*snapshot_support=*/true};
  plan.ea_params.max_generations = 500;

  int attempts_used = 0;
  CompressionResult result =
      compress_with_attempts(plan, options.seed, options.cell_attempts, &attempts_used);
  fs::path dir = fs::path(options.out_dir) / "fig5";
  write_circuit_file((dir / "circuit.rvc").string(), result.full_circuit);
  write_trace_file((dir / "trace.jsonl").string(), result.trace);
  write_summary_file((dir / "summary.csv").string(),
                     summarize({std::optional<CompressionResult>(result)}, {spec}));
  print_result_line(out, "fig5 unary n=6", result);
  return result.success ? kExitSuccess : kExitSearchFailure;
}

int reproduce_fig7(const ReproduceOptions& options, std::ostream& out) {
  if (options.max_n < 4) throw InvalidInputError("fig7 requires --max-n >= 4");
  int wide_cap = std::min(options.max_n, 8);
  int narrow_cap = std::min(options.max_n, 6);

  std::vector<CellOutcome> cells;
  auto add_attempted = [&](FamilySpec spec) { cells.push_back({spec, std::nullopt}); };
  for (int n = 4; n <= wide_cap; ++n) add_attempted({FamilyKind::Unary, n, 0, 0, 0});
  for (int n = 4; n <= wide_cap; ++n) add_attempted({FamilyKind::Ghz, n, 0, 0, 0});
  for (int n = 4; n <= wide_cap; ++n) add_attempted({FamilyKind::RandomSupport, n, 0, 0, 0});
  for (int n = 4; n <= narrow_cap; ++n) add_attempted({FamilyKind::Prime, n, 0, 0, 0});
  for (int n = 4; n <= narrow_cap; ++n) add_attempted({FamilyKind::MParticle, n, 2, 0, 0});
  // 3-particle is complement-equivalent below n=6 (the "-" rows).
  for (int n = 4; n <= narrow_cap; ++n) {
    cells.push_back({FamilySpec{FamilyKind::MParticle, n, 3, 0, 0}, std::nullopt});
  }

  fs::path dir = fs::path(options.out_dir) / "fig7";
  std::vector<std::optional<CompressionResult>> results;
  std::vector<FamilySpec> specs;
  bool all_success = true;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    FamilySpec spec = cells[i].spec;
    bool attempted = true;
    if (spec.kind == FamilyKind::MParticle && spec.m > spec.n_qubits / 2) attempted = false;
    if (spec.kind == FamilyKind::RandomSupport) {
      spec.seed = mix_seed(options.seed, 2 * i + 1);
    }
    specs.push_back(spec);
    if (!attempted) {
      results.emplace_back(std::nullopt);
      out << spec.label() << " n=" << spec.n_qubits << ": not applicable\n";
      continue;
    }
    TrainingSet training = generate(spec);
    CompressionPlan plan{training, default_target(training, std::nullopt),
                         fig7_params(spec), OrderStrategy::Fixed, false};
    int attempts_used = 0;
    CompressionResult result = compress_with_attempts(plan, mix_seed(options.seed, 2 * i),
                                                      options.cell_attempts, &attempts_used);
    all_success = all_success && result.success;
    std::string tag = spec.label() + "_n" + std::to_string(spec.n_qubits);
    write_circuit_file((dir / (tag + ".rvc")).string(), result.full_circuit);
    write_trace_file((dir / (tag + ".jsonl")).string(), result.trace);
    print_result_line(out, tag + " (attempt " + std::to_string(attempts_used) + ")", result);
    results.push_back(std::move(result));
  }
  write_summary_file((dir / "summary.csv").string(), summarize(results, specs));
  return all_success ? kExitSuccess : kExitSearchFailure;
}

}  // namespace

int run_reproduce(const ReproduceOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (options.figure == "fig5") return reproduce_fig5(options, out);
    if (options.figure == "fig7") return reproduce_fig7(options, out);
    throw InvalidInputError("unknown figure '" + options.figure + "'; expected fig5 or fig7");
  });
}

}  // namespace revcomp::cli
