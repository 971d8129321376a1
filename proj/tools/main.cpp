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

// revcomp: evolutionary search for reversible circuits that compress
// families of sparse basis-state superpositions onto fewer qubits.
//
// Subcommands: gen, compress, verify, simulate, reproduce.
// Exit codes: 0 success, 1 verification failure, 2 invalid or infeasible
// input, 3 search failure.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "revcomp/cli.hpp"

namespace {

using revcomp::FamilyKind;
using revcomp::FamilySpec;
using revcomp::OrderStrategy;

struct FamilyFlags {
  std::string family;
  int n_qubits = 0;
  int m = 0;
  int support_size = 0;
  std::uint64_t state_seed = 0;

  void attach(CLI::App* cmd, bool required) {
    auto* family_opt =
        cmd->add_option("--family", family, "State family: unary|ghz|random|prime|m_particle");
    auto* n_opt = cmd->add_option("--n", n_qubits, "Register width in qubits");
    if (required) {
      family_opt->required();
      n_opt->required();
    } else {
      n_opt->needs(family_opt);
    }
    cmd->add_option("--m", m, "Particle count (m_particle family)");
    cmd->add_option("--support-size", support_size, "Support size (random family; default n)");
    cmd->add_option("--state-seed", state_seed, "Sampling seed (random family)");
  }

  std::optional<FamilySpec> spec() const {
    if (family.empty()) return std::nullopt;
    auto kind = revcomp::family_kind_from_name(family);
    if (!kind) throw CLI::ValidationError("--family", "unknown family '" + family + "'");
    return FamilySpec{*kind, n_qubits, m, support_size, state_seed};
  }
};

struct SearchFlags {
  revcomp::cli::EaOverrides ea;
  std::string order = "fixed";
  std::vector<double> weights;

  void attach(CLI::App* cmd) {
    cmd->add_option("--weights", weights,
                    "Mutation weights: add,remove,permute,repeat,replace")
        ->delimiter(',')
        ->expected(0, 5);
    auto bind = [cmd](const char* name, auto& slot, const char* help) {
      cmd->add_option_function<typename std::decay_t<decltype(slot)>::value_type>(
          name, [&slot](const auto& v) { slot = v; }, help);
    };
    bind("--pop", ea.population_size, "Population size (default 100)");
    bind("--parents", ea.parent_count, "Parents kept per generation (default 20)");
    bind("--children", ea.children_per_generation, "Children per generation (default 80)");
    bind("--max-gen", ea.max_generations, "Generation budget per stage (default 1000)");
    bind("--restarts", ea.restarts, "Independent attempts per stage (default 5)");
    bind("--penalty", ea.length_penalty, "Per-gate fitness penalty (default 0)");
    cmd->add_option("--order", order, "Trash disentangling order: fixed|greedy");
  }

  OrderStrategy order_strategy() const {
    if (order == "fixed") return OrderStrategy::Fixed;
    if (order == "greedy") return OrderStrategy::Greedy;
    throw CLI::ValidationError("--order", "expected fixed or greedy");
  }

  revcomp::cli::EaOverrides overrides() const {
    revcomp::cli::EaOverrides out = ea;
    if (!weights.empty()) {
      if (weights.size() != 5) {
        throw CLI::ValidationError("--weights", "expected 5 comma-separated values");
      }
      std::array<double, 5> w{};
      std::copy(weights.begin(), weights.end(), w.begin());
      out.mutation_weights = w;
    }
    return out;
  }
};

/// Config files are INI-style with subcommand sections, e.g.
///   schema = 1
///   [compress]
///   family = ghz
///   n = 4
/// Flags override file values; unknown keys are rejected.
void configure_app(CLI::App& app, int& schema_slot) {
  app.set_config("--config", "", "Key-value config file; flags override file values");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.add_option("--schema", schema_slot, "Config schema version (must be 1)")
      ->check(CLI::IsMember({1}));
}

/// True when the flag was given literally on the command line ("--seed" or
/// "--seed=..."), as opposed to arriving via config file.
bool flag_on_command_line(int argc, char** argv, const std::string& flag) {
  for (int i = 1; i < argc; ++i) {
    std::string_view arg(argv[i]);
    if (arg == flag || arg.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

/// Spec'd precedence for the master seed: --seed flag, then REVCOMP_SEED,
/// then config value, then default.
void apply_seed_env(int argc, char** argv, std::uint64_t& seed) {
  if (flag_on_command_line(argc, argv, "--seed")) return;
  if (const char* env = std::getenv("REVCOMP_SEED")) {
    seed = std::strtoull(env, nullptr, 10);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reversible-circuit compression toolkit"};
  app.require_subcommand(1);
  int schema = 1;
  configure_app(app, schema);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "Generate a training-set artifact");
  FamilyFlags gen_family;
  gen_family.attach(gen, /*required=*/true);
  std::string gen_out;
  gen->add_option("--out", gen_out, "Output path (default <family>_n<n>.json)");
  gen->add_option("--seed", gen_family.state_seed,
                  "Alias of --state-seed for the random family");

  // ---- compress ----
  auto* compress = app.add_subcommand("compress", "Search for a compression circuit");
  FamilyFlags compress_family;
  compress_family.attach(compress, /*required=*/false);
  SearchFlags compress_search;
  compress_search.attach(compress);
  revcomp::cli::CompressOptions compress_options;
  compress->add_option("--training", compress_options.training_path,
                       "Training-set file instead of --family");
  int compress_trash = -1;
  compress->add_option("--trash", compress_trash, "Trash-qubit count (default: full budget)");
  compress->add_option("--trash-qubits", compress_options.trash_qubits,
                       "Explicit trash qubits (overrides --trash)")
      ->delimiter(',');
  compress->add_option("--seed", compress_options.seed, "Master seed");
  compress->add_option("--reps", compress_options.repetitions,
                       "Repetitions with seeds seed, seed+1, ...");
  compress->add_option("--out", compress_options.out_dir, "Output directory (default ./out)");
  compress->add_flag("--snapshots", compress_options.snapshots,
                     "Record per-generation support snapshots in the trace");
  compress->add_flag("-v,--verbose", compress_options.verbose, "Print per-stage details");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "Re-check a circuit against a training set");
  revcomp::cli::VerifyOptions verify_options;
  verify->add_option("--circuit", verify_options.circuit_path, "Circuit file (.rvc)")->required();
  FamilyFlags verify_family;
  verify_family.attach(verify, /*required=*/false);
  verify->add_option("--training", verify_options.training_path,
                     "Training-set file instead of --family");
  int verify_trash = -1;
  verify->add_option("--trash", verify_trash, "Trash-qubit count (default: full budget)");
  verify->add_option("--trash-qubits", verify_options.trash_qubits,
                     "Explicit trash qubits (overrides --trash)")
      ->delimiter(',');
  verify->add_flag("--oracle", verify_options.oracle,
                   "Insist on the dense permutation-table cross-check (n <= 12)");

  // ---- simulate ----
  auto* simulate = app.add_subcommand("simulate", "Apply a circuit and print the final support");
  revcomp::cli::SimulateOptions simulate_options;
  simulate->add_option("--circuit", simulate_options.circuit_path, "Circuit file (.rvc)")
      ->required();
  simulate->add_option("--ket", simulate_options.ket, "Basis-state input, e.g. 11000");
  simulate->add_option("--training", simulate_options.training_path,
                       "Apply to every state of a training-set file");

  // ---- reproduce ----
  auto* reproduce = app.add_subcommand("reproduce", "Run a named experiment bundle");
  revcomp::cli::ReproduceOptions reproduce_options;
  reproduce->add_option("figure", reproduce_options.figure, "fig5 or fig7")->required();
  reproduce->add_option("--seed", reproduce_options.seed, "Master seed");
  reproduce->add_option("--out", reproduce_options.out_dir, "Output directory (default ./out)");
  reproduce->add_option("--max-n", reproduce_options.max_n,
                        "Cap family sizes (fig7; default 6, max 8)");
  reproduce->add_option("--attempts", reproduce_options.cell_attempts,
                        "Whole-cell reruns with derived seeds (default 4)");
  reproduce->add_flag("-v,--verbose", reproduce_options.verbose, "Print per-cell details");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough(true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return revcomp::cli::kExitInvalidInput;
  }

  try {
    if (gen->parsed()) {
      revcomp::cli::GenOptions options{gen_family.spec().value(), gen_out};
      return revcomp::cli::run_gen(options, std::cout, std::cerr);
    }
    if (compress->parsed()) {
      apply_seed_env(argc, argv, compress_options.seed);
      compress_options.spec = compress_family.spec();
      compress_options.ea = compress_search.overrides();
      compress_options.order = compress_search.order_strategy();
      if (compress_trash >= 0) compress_options.trash_count = compress_trash;
      return revcomp::cli::run_compress(compress_options, std::cout, std::cerr);
    }
    if (verify->parsed()) {
      verify_options.spec = verify_family.spec();
      if (verify_trash >= 0) verify_options.trash_count = verify_trash;
      return revcomp::cli::run_verify(verify_options, std::cout, std::cerr);
    }
    if (simulate->parsed()) {
      return revcomp::cli::run_simulate(simulate_options, std::cout, std::cerr);
    }
    if (reproduce->parsed()) {
      apply_seed_env(argc, argv, reproduce_options.seed);
      return revcomp::cli::run_reproduce(reproduce_options, std::cout, std::cerr);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return revcomp::cli::kExitInvalidInput;
  } catch (const std::bad_optional_access&) {
    std::cerr << "error: missing required family specification\n";
    return revcomp::cli::kExitInvalidInput;
  }
  return revcomp::cli::kExitInvalidInput;
}
