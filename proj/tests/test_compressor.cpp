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

#include <set>

#include "revcomp/compressor.hpp"
#include "revcomp/sim.hpp"
#include "test_util.hpp"

using namespace revcomp;
using namespace revcomp::testutil;

namespace {

CompressionPlan make_plan(TrainingSet training, std::uint64_t seed, int max_gen) {
  CompressionTarget target = default_target(training);
  EAParams params;
  params.seed = seed;
  params.max_generations = max_gen;
  return CompressionPlan{std::move(training), target, params, OrderStrategy::Fixed, false};
}

}  // namespace

TEST_CASE("compress ghz n=4") {
  CompressionPlan plan = make_plan(gen_ghz(4), 1, 200);
  CompressionResult result = compress(plan);
  REQUIRE(result.success);
  CHECK(result.stage_targets == std::vector<int>{0, 1, 2});
  CHECK(result.verification.passed());
  CHECK(result.gate_histogram == result.full_circuit.histogram());

  SUBCASE("full circuit equals the stage concatenation") {
    Circuit rebuilt(4);
    for (const Circuit& stage : result.stage_circuits) rebuilt = rebuilt.then(stage);
    CHECK(rebuilt == result.full_circuit);
  }
  SUBCASE("stage-by-stage application matches the full circuit") {
    for (const SparseState& s : plan.training.states()) {
      SparseState staged = s;
      for (const Circuit& stage : result.stage_circuits) staged = apply_circuit(staged, stage);
      CHECK(staged == apply_circuit(s, result.full_circuit));
    }
  }
  SUBCASE("monotone disentanglement: cleared qubits stay cleared") {
    for (const SparseState& s : plan.training.states()) {
      SparseState staged = s;
      for (std::size_t i = 0; i < result.stage_circuits.size(); ++i) {
        staged = apply_circuit(staged, result.stage_circuits[i]);
        for (std::size_t j = 0; j <= i; ++j) {
          CHECK(is_disentangled(staged, result.stage_targets[j]));
        }
      }
    }
  }
  SUBCASE("decode inverts the compression exactly") {
    for (const SparseState& s : plan.training.states()) {
      SparseState compressed = apply_circuit(s, result.full_circuit);
      CHECK(decode(compressed, result.full_circuit, plan.target) == s);
    }
  }
}

TEST_CASE("compress five-qubit two-particle states") {
  CompressionPlan plan = make_plan(gen_m_particle(5, 2), 1, 1000);
  CompressionResult result = compress(plan);
  REQUIRE(result.success);
  REQUIRE(result.verification.mapping.size() == 10);
  std::set<std::string> images;
  for (const auto& [in, out] : result.verification.mapping) {
    CHECK(out[0] == '0');  // trash bit cleared in every image
    images.insert(out);
  }
  CHECK(images.size() == 10);  // injective relabeling
  CHECK(result.verification.oracle_checked);
  CHECK(result.verification.oracle_equivalent);
  for (const TraceRecord& r : result.trace) CHECK(r.stage >= 0);
}

TEST_CASE("already-compressed qubits yield empty stage circuits") {
  // Both training states have qubit 0 clear already.
  TrainingSet training = TrainingSet::uniform(
      {SparseState::basis(3, parse_ket("010")), SparseState::basis(3, parse_ket("001"))});
  CompressionPlan plan{training, target_with_qubits(training, {0}), EAParams{},
                       OrderStrategy::Fixed, false};
  CompressionResult result = compress(plan);
  REQUIRE(result.success);
  REQUIRE(result.stage_circuits.size() == 1);
  CHECK(result.stage_circuits[0].empty());
  CHECK(result.full_circuit.empty());
  CHECK(result.total_steps == 0);
}

TEST_CASE("infeasible plans are rejected") {
  TrainingSet training = gen_ghz(4);
  CompressionTarget too_many{4, {0, 1, 2, 3}};
  CompressionPlan plan{training, too_many, EAParams{}, OrderStrategy::Fixed, false};
  CHECK_THROWS_AS(compress(plan), InfeasibleTargetError);

  CompressionTarget mismatched{2, {0}};
  CompressionPlan plan2{training, mismatched, EAParams{}, OrderStrategy::Fixed, false};
  CHECK_THROWS_AS(compress(plan2), InvalidInputError);
}

TEST_CASE("greedy order picks the cleanest qubit first") {
  CompressionPlan plan = make_plan(gen_ghz(5), 4, 200);
  plan.order = OrderStrategy::Greedy;
  CompressionResult result = compress(plan);
  CHECK(result.success);
  CHECK(result.stage_targets.size() == 4);
  CHECK(result.verification.passed());
}

TEST_CASE("verify") {
  TrainingSet training = TrainingSet::uniform(
      {SparseState::basis(3, parse_ket("010")), SparseState::basis(3, parse_ket("011"))});
  CompressionTarget target = target_with_qubits(training, {0});

  SUBCASE("identity circuit on already-compressed input passes") {
    VerificationReport report = verify(Circuit(3), training, target);
    CHECK(report.passed());
    CHECK(report.injective_on_support);
    CHECK(report.oracle_checked);
    CHECK(report.oracle_equivalent);
    REQUIRE(report.mapping.size() == 2);
    CHECK(report.mapping[0] == std::pair<std::string, std::string>{"010", "010"});
  }
  SUBCASE("an appended X on the trash qubit breaks the trash check") {
    VerificationReport report = verify(Circuit(3, {Gate::x(0)}), training, target);
    CHECK_FALSE(report.passed());
    CHECK_FALSE(report.trash_cleared[0]);
    CHECK(report.injective_on_support);  // still a permutation
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(verify(Circuit(4), training, target), DimensionError);
  }
}

TEST_CASE("decode") {
  TrainingSet training = gen_ghz(3);
  CompressionTarget target = target_with_qubits(training, {0, 1});
  SUBCASE("empty circuit decodes as the identity") {
    SparseState s = SparseState::basis(3, parse_ket("001"));
    CHECK(decode(s, Circuit(3), target) == s);
  }
  SUBCASE("nonzero trash bits are rejected") {
    SparseState dirty = SparseState::basis(3, parse_ket("100"));
    CHECK_THROWS_AS(decode(dirty, Circuit(3), target), InvalidInputError);
  }
  SUBCASE("decode(encode(s)) == s on every ghz size") {
    for (int n = 4; n <= 8; ++n) {
      CompressionPlan plan = make_plan(gen_ghz(n), 2, 200);
      CompressionResult result = compress(plan);
      REQUIRE(result.success);
      const SparseState& s = plan.training.states()[0];
      SparseState compressed = apply_circuit(s, result.full_circuit);
      CHECK(decode(compressed, result.full_circuit, plan.target) == s);
    }
  }
}

TEST_CASE("summarize") {
  CompressionPlan plan = make_plan(gen_ghz(4), 1, 200);
  CompressionResult result = compress(plan);
  REQUIRE(result.success);

  std::vector<std::optional<CompressionResult>> results;
  results.emplace_back(result);
  results.emplace_back(std::nullopt);
  std::vector<FamilySpec> specs{{FamilyKind::Ghz, 4, 0, 0, 0},
                                {FamilyKind::MParticle, 5, 3, 0, 0}};
  std::vector<SummaryRow> rows = summarize(results, specs);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].family == "ghz");
  CHECK(rows[0].success);
  CHECK(rows[0].trash_requested == 3);
  CHECK(rows[0].x_count == result.gate_histogram.x);
  CHECK(rows[0].cx_count == result.gate_histogram.cx);
  CHECK(rows[0].ccx_count == result.gate_histogram.ccx);
  CHECK(rows[0].seed == 1);
  CHECK(rows[1].not_applicable);
  CHECK(rows[1].family == "3_particle");

  CHECK_THROWS_AS(summarize({}, specs), InvalidInputError);
}

TEST_CASE("stage failure reports the failing qubit") {
  // A one-generation, one-restart budget on a hard instance fails fast.
  CompressionPlan plan = make_plan(gen_m_particle(5, 2), 1, 0);
  plan.ea_params.restarts = 1;
  CompressionResult result = compress(plan);
  CHECK_FALSE(result.success);
  CHECK(result.failed_qubit == 0);
  CHECK_FALSE(result.verification.passed());
}
