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

#include <filesystem>
#include <fstream>
#include <set>

#include "revcomp/codec.hpp"
#include "revcomp/families.hpp"
#include "revcomp/sim.hpp"
#include "test_util.hpp"

using namespace revcomp;
using namespace revcomp::testutil;

namespace {

namespace fs = std::filesystem;

fs::path temp_dir() {
  fs::path dir = fs::temp_directory_path() / "revcomp_codec_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("serialize_circuit canonical form") {
  CHECK(serialize_circuit(Circuit(3, {Gate::x(2)})) == "(2)");
  CHECK(serialize_circuit(Circuit(3, {Gate::cx(1, 0), Gate::ccx(2, 0, 1)})) ==
        "(1, 0) (2, 0, 1)");
  // Independent gates land in moment 0 and sort by target regardless of
  // insertion order.
  CHECK(serialize_circuit(Circuit(2, {Gate::x(0), Gate::x(1)})) == "(0) (1)");
  CHECK(serialize_circuit(Circuit(2, {Gate::x(1), Gate::x(0)})) == "(0) (1)");
  CHECK(serialize_circuit(Circuit(4)) == "");
  // Controls are a set: emitted ascending.
  CHECK(serialize_circuit(Circuit(3, {Gate::ccx(2, 1, 0)})) == "(2, 0, 1)");
}

TEST_CASE("moment schedule is ASAP and valid") {
  Circuit c(3, {Gate::cx(1, 0), Gate::ccx(2, 0, 1)});
  CHECK(moment_schedule(c) == std::vector<int>{0, 1});

  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng.below(6));
    Circuit random = random_circuit(n, 1 + static_cast<int>(rng.below(25)), rng);
    std::vector<int> moments = moment_schedule(random);
    // No two gates in one moment share a qubit.
    for (std::size_t i = 0; i < random.size(); ++i) {
      for (std::size_t j = i + 1; j < random.size(); ++j) {
        if (moments[i] != moments[j]) continue;
        for (int q = 0; q < n; ++q) {
          CHECK_FALSE((random.gates()[i].touches(q) && random.gates()[j].touches(q)));
        }
      }
    }
    // Each gate sits in the earliest moment after its qubit-sharing
    // predecessors.
    for (std::size_t i = 0; i < random.size(); ++i) {
      int earliest = 0;
      for (std::size_t j = 0; j < i; ++j) {
        for (int q = 0; q < n; ++q) {
          if (random.gates()[i].touches(q) && random.gates()[j].touches(q)) {
            earliest = std::max(earliest, moments[j] + 1);
          }
        }
      }
      CHECK(moments[i] == earliest);
    }
  }
}

TEST_CASE("parse_circuit") {
  SUBCASE("arity dispatch") {
    Circuit c = parse_circuit("(1, 0) (2, 0, 1)", 3);
    REQUIRE(c.size() == 2);
    CHECK(c.gates()[0] == Gate::cx(1, 0));
    CHECK(c.gates()[1] == Gate::ccx(2, 0, 1));
    CHECK(parse_circuit("(2)", 3).gates()[0] == Gate::x(2));
    CHECK(parse_circuit("", 3).empty());
  }
  SUBCASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_circuit("(0, 0)", 3), ParseError);
    CHECK_THROWS_AS(parse_circuit("(0, 1, 2, 3)", 5), ParseError);
    CHECK_THROWS_AS(parse_circuit("(7)", 3), ParseError);
    CHECK_THROWS_AS(parse_circuit("0)", 3), ParseError);
    CHECK_THROWS_AS(parse_circuit("(x)", 3), ParseError);
    CHECK_THROWS_AS(parse_circuit("()", 3), ParseError);
    CHECK_THROWS_AS(parse_circuit("(1", 3), ParseError);
    try {
      parse_circuit("(0) (9)", 3);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.position == 5);
    }
  }
}

TEST_CASE("serialize/parse roundtrip") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng.below(6));
    Circuit c = random_circuit(n, static_cast<int>(rng.below(30)), rng);
    std::string text = serialize_circuit(c);
    Circuit reparsed = parse_circuit(text, n);
    CHECK(serialize_circuit(reparsed) == text);
    // Canonicalization only reorders commuting gates: same permutation.
    if (n <= 6) {
      CHECK(permutation_table(reparsed) == permutation_table(c));
    }
  }
}

TEST_CASE("circuit file format") {
  fs::path path = temp_dir() / "eq7.rvc";
  Circuit c(5, {Gate::ccx(0, 1, 2), Gate::cx(3, 0), Gate::x(4)});
  write_circuit_file(path.string(), c);

  SUBCASE("three LF-terminated lines, exact body") {
    std::string content = read_text(path.string());
    CHECK(content == "revcomp-circuit v1\nn_qubits=5\n" + serialize_circuit(c) + "\n");
  }
  SUBCASE("roundtrip preserves the string body") {
    Circuit back = read_circuit_file(path.string());
    CHECK(serialize_circuit(back) == serialize_circuit(c));
    CHECK(back.n_qubits() == 5);
  }
  SUBCASE("empty circuit roundtrip") {
    fs::path p2 = temp_dir() / "empty.rvc";
    write_circuit_file(p2.string(), Circuit(4));
    CHECK(read_circuit_file(p2.string()).empty());
  }
  SUBCASE("version and format errors") {
    fs::path bad = temp_dir() / "bad.rvc";
    write_text_atomic(bad.string(), "revcomp-circuit v2\nn_qubits=3\n(0)\n");
    CHECK_THROWS_AS(read_circuit_file(bad.string()), IoError);
    write_text_atomic(bad.string(), "something else\n");
    CHECK_THROWS_AS(read_circuit_file(bad.string()), IoError);
    write_text_atomic(bad.string(), "revcomp-circuit v1\nn_qubits=zzz\n(0)\n");
    CHECK_THROWS_AS(read_circuit_file(bad.string()), IoError);
    CHECK_THROWS_AS(read_circuit_file((temp_dir() / "missing.rvc").string()), IoError);
  }
}

TEST_CASE("training file roundtrip") {
  fs::path path = temp_dir() / "train.json";
  SUBCASE("prime family roundtrips exactly") {
    TrainingSet training = gen_prime(4);
    write_training_file(path.string(), training);
    CHECK(read_training_file(path.string()) == training);
  }
  SUBCASE("random amplitudes roundtrip exactly") {
    Rng rng(3);
    TrainingSet training =
        TrainingSet::uniform({random_state(5, 4, rng), random_state(5, 7, rng)});
    write_training_file(path.string(), training);
    CHECK(read_training_file(path.string()) == training);
  }
  SUBCASE("version mismatch and malformed content") {
    write_text_atomic(path.string(), "{\"format\":\"revcomp-training\",\"version\":99}");
    CHECK_THROWS_AS(read_training_file(path.string()), IoError);
    write_text_atomic(path.string(), "not json");
    CHECK_THROWS_AS(read_training_file(path.string()), IoError);
    write_text_atomic(path.string(),
                      "{\"format\":\"revcomp-training\",\"version\":1,\"n_qubits\":2,"
                      "\"weights\":[1.0],\"states\":[{\"terms\":[{\"ket\":\"110\","
                      "\"amp\":[1.0,0.0]}]}]}");
    CHECK_THROWS_AS(read_training_file(path.string()), IoError);
  }
}

TEST_CASE("trace records") {
  TraceRecord plain{3, 0.75, 12, 100, -1, -1, {}};
  TraceRecord full{0, 1.0, 4, 100, 2, 480,
                   std::vector<std::vector<std::string>>{{"000"}, {"010"}}};
  SUBCASE("single-record roundtrip with and without optional fields") {
    CHECK(trace_record_from_json(trace_record_to_json(plain)) == plain);
    CHECK(trace_record_from_json(trace_record_to_json(full)) == full);
  }
  SUBCASE("file roundtrip") {
    fs::path path = temp_dir() / "trace.jsonl";
    std::vector<TraceRecord> records{plain, full};
    write_trace_file(path.string(), records);
    CHECK(read_trace_file(path.string()) == records);
  }
  SUBCASE("required fields are enforced") {
    CHECK_THROWS_AS(trace_record_from_json("{\"generation\":1}"), IoError);
    CHECK_THROWS_AS(trace_record_from_json("nonsense"), IoError);
  }
}

TEST_CASE("summary files") {
  fs::path path = temp_dir() / "summary.csv";
  SUBCASE("zero experiments yields a bare header") {
    write_summary_file(path.string(), {});
    CHECK(read_text(path.string()) ==
          "family,n_qubits,trash_requested,success,generations,x_count,cx_count,ccx_count,seed\n");
    CHECK(read_summary_file(path.string()).empty());
  }
  SUBCASE("rows roundtrip, including not-applicable rows") {
    std::vector<SummaryRow> rows;
    rows.push_back({"unary", 6, false, 3, true, 137, 6, 18, 17, 12345});
    rows.push_back({"3_particle", 5, true, 0, false, 0, 0, 0, 0, 0});
    write_summary_file(path.string(), rows);
    std::vector<SummaryRow> back = read_summary_file(path.string());
    REQUIRE(back.size() == 2);
    CHECK(back[0] == rows[0]);
    CHECK(back[1].not_applicable);
    CHECK(back[1].family == "3_particle");
    CHECK(back[1].n_qubits == 5);
  }
  SUBCASE("header mismatch is rejected") {
    write_text_atomic(path.string(), "wrong,header\n");
    CHECK_THROWS_AS(read_summary_file(path.string()), IoError);
  }
}

TEST_CASE("serialization is deterministic across writes") {
  Rng rng(19);
  Circuit c = random_circuit(5, 20, rng);
  fs::path a = temp_dir() / "a.rvc";
  fs::path b = temp_dir() / "b.rvc";
  write_circuit_file(a.string(), c);
  write_circuit_file(b.string(), c);
  CHECK(read_text(a.string()) == read_text(b.string()));
  CHECK(serialize_circuit(c) == serialize_circuit(c));
}

TEST_CASE("grammar totality: every serialized string reparses") {
  Rng rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + static_cast<int>(rng.below(8));
    Circuit c = random_circuit(n, static_cast<int>(rng.below(40)), rng);
    CHECK_NOTHROW(parse_circuit(serialize_circuit(c), n));
  }
}
