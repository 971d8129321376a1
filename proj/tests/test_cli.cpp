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

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "revcomp/cli.hpp"
#include "revcomp/codec.hpp"
#include "revcomp/sim.hpp"

using namespace revcomp;

namespace {

namespace fs = std::filesystem;

struct RunOutcome {
  int exit_code;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  fs::path dir = fs::temp_directory_path() / "revcomp_cli_test";
  fs::create_directories(dir);
  return dir;
}

/// Runs the installed CLI binary with stdout/stderr captured to files.
RunOutcome run_cli(const std::string& args) {
  fs::path dir = work_dir();
  fs::path out_file = dir / "stdout.txt";
  fs::path err_file = dir / "stderr.txt";
  std::string command = std::string(REVCOMP_CLI_PATH) + " " + args + " > " + out_file.string() +
                        " 2> " + err_file.string();
  int status = std::system(command.c_str());
  RunOutcome outcome;
  outcome.exit_code = WEXITSTATUS(status);
  outcome.out = read_text(out_file.string());
  outcome.err = read_text(err_file.string());
  return outcome;
}

}  // namespace

TEST_CASE("gen writes and describes a training set") {
  fs::path out = work_dir() / "prime4.json";
  RunOutcome r = run_cli("gen --family prime --n 4 --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("union support: 6") != std::string::npos);
  for (const char* v : {"(2)", "(3)", "(5)", "(7)", "(11)", "(13)"}) {
    CHECK(r.out.find(v) != std::string::npos);
  }
  TrainingSet training = read_training_file(out.string());
  CHECK(training.union_support() == std::vector<BasisKey>{2, 3, 5, 7, 11, 13});
}

TEST_CASE("gen rejects complement-equivalent m-particle specs with a hint") {
  RunOutcome r = run_cli("gen --family m_particle --n 5 --m 3");
  CHECK(r.exit_code == cli::kExitInvalidInput);
  CHECK(r.err.find("--m 2") != std::string::npos);
}

TEST_CASE("compress / verify / simulate round-trip through the binary") {
  fs::path dir = work_dir() / "ghz4";
  RunOutcome c = run_cli("compress --family ghz --n 4 --seed 1 --out " + dir.string());
  REQUIRE(c.exit_code == 0);
  CHECK(fs::exists(dir / "circuit.rvc"));
  CHECK(fs::exists(dir / "trace.jsonl"));
  CHECK(fs::exists(dir / "summary.csv"));

  RunOutcome v =
      run_cli("verify --circuit " + (dir / "circuit.rvc").string() + " --family ghz --n 4");
  CHECK(v.exit_code == 0);
  CHECK(v.out.find("PASS") != std::string::npos);

  RunOutcome s = run_cli("simulate --circuit " + (dir / "circuit.rvc").string() + " --ket 1111");
  CHECK(s.exit_code == 0);
  CHECK(s.out.find("p=0.5") == std::string::npos);  // basis input stays a basis state
  CHECK(s.out.find("p=1") != std::string::npos);

  SUBCASE("tampering with the circuit fails verification with exit 1") {
    Circuit circuit = read_circuit_file((dir / "circuit.rvc").string());
    circuit.append(Gate::x(0));
    fs::path tampered = work_dir() / "tampered.rvc";
    write_circuit_file(tampered.string(), circuit);
    RunOutcome bad = run_cli("verify --circuit " + tampered.string() + " --family ghz --n 4");
    CHECK(bad.exit_code == cli::kExitVerifyFailure);
    CHECK(bad.out.find("FAIL") != std::string::npos);
  }
}

TEST_CASE("exit codes for invalid and infeasible inputs") {
  CHECK(run_cli("compress --family ghz --n 4 --trash 4 --out " +
                (work_dir() / "x").string())
            .exit_code == cli::kExitInvalidInput);
  CHECK(run_cli("compress --family nope --n 4 --out " + (work_dir() / "x").string()).exit_code ==
        cli::kExitInvalidInput);
  CHECK(run_cli("reproduce fig9 --out " + (work_dir() / "x").string()).exit_code ==
        cli::kExitInvalidInput);
  CHECK(run_cli("simulate --circuit " + (work_dir() / "does_not_exist.rvc").string() +
                " --ket 00")
            .exit_code == cli::kExitInvalidInput);
}

TEST_CASE("search failure exits 3 with partial artifacts") {
  fs::path dir = work_dir() / "hopeless";
  RunOutcome r = run_cli(
      "compress --family m_particle --n 5 --m 2 --seed 1 --max-gen 0 --restarts 1 --out " +
      dir.string());
  CHECK(r.exit_code == cli::kExitSearchFailure);
  CHECK(fs::exists(dir / "circuit.rvc"));
  CHECK(fs::exists(dir / "summary.csv"));
  CHECK(r.out.find("FAILED") != std::string::npos);
}

TEST_CASE("equal seeds give byte-identical artifacts") {
  fs::path a = work_dir() / "det_a";
  fs::path b = work_dir() / "det_b";
  REQUIRE(run_cli("compress --family prime --n 4 --seed 7 --out " + a.string()).exit_code == 0);
  REQUIRE(run_cli("compress --family prime --n 4 --seed 7 --out " + b.string()).exit_code == 0);
  for (const char* name : {"circuit.rvc", "trace.jsonl", "summary.csv"}) {
    CHECK(read_text((a / name).string()) == read_text((b / name).string()));
  }
}

TEST_CASE("REVCOMP_SEED environment variable sets the master seed") {
  fs::path a = work_dir() / "env_a";
  fs::path b = work_dir() / "env_b";
  REQUIRE(run_cli("compress --family ghz --n 4 --seed 21 --out " + a.string()).exit_code == 0);
  std::string command = std::string("REVCOMP_SEED=21 ") + REVCOMP_CLI_PATH +
                        " compress --family ghz --n 4 --out " + b.string() + " > /dev/null 2>&1";
  REQUIRE(WEXITSTATUS(std::system(command.c_str())) == 0);
  CHECK(read_text((a / "circuit.rvc").string()) == read_text((b / "circuit.rvc").string()));
  CHECK(read_text((a / "summary.csv").string()) == read_text((b / "summary.csv").string()));
}

TEST_CASE("config files feed flags and reject unknown keys") {
  fs::path config = work_dir() / "run.ini";
  fs::path from_config = work_dir() / "from_config";
  fs::path from_flags = work_dir() / "from_flags";
  write_text_atomic(config.string(), "schema=1\n[compress]\nfamily=ghz\nn=4\nseed=21\nout=" +
                                         from_config.string() + "\n");
  CHECK(run_cli("compress --config " + config.string()).exit_code == 0);
  REQUIRE(run_cli("compress --family ghz --n 4 --seed 21 --out " + from_flags.string())
              .exit_code == 0);
  CHECK(read_text((from_config / "circuit.rvc").string()) ==
        read_text((from_flags / "circuit.rvc").string()));

  fs::path bad = work_dir() / "bad.ini";
  write_text_atomic(bad.string(), "schema=1\n[compress]\nfamily=ghz\nn=4\nbogus_key=1\n");
  CHECK(run_cli("compress --config " + bad.string()).exit_code != 0);
}

TEST_CASE("repetitions write one artifact set per seed") {
  fs::path dir = work_dir() / "reps";
  RunOutcome r =
      run_cli("compress --family ghz --n 4 --seed 5 --reps 2 --out " + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "circuit_r0.rvc"));
  CHECK(fs::exists(dir / "circuit_r1.rvc"));
  CHECK(read_summary_file((dir / "summary.csv").string()).size() == 2);
}

TEST_CASE("reproduce fig5 emits snapshot traces ending fully cleared") {
  fs::path dir = work_dir() / "repro";
  std::ostringstream out, err;
  cli::ReproduceOptions options;
  options.figure = "fig5";
  options.out_dir = dir.string();
  options.seed = 1;
  REQUIRE(cli::run_reproduce(options, out, err) == 0);

  std::vector<TraceRecord> trace = read_trace_file((dir / "fig5" / "trace.jsonl").string());
  REQUIRE(!trace.empty());
  REQUIRE(trace.back().support_snapshot.has_value());
  for (const std::vector<std::string>& kets : *trace.back().support_snapshot) {
    for (const std::string& ket : kets) {
      CHECK(ket.substr(0, 3) == "000");  // first three qubit columns all zero
    }
  }
  // The final snapshot still holds six distinct images (one per training state).
  CHECK(trace.back().support_snapshot->size() == 6);
}
