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

#include <benchmark/benchmark.h>

#include "revcomp/codec.hpp"
#include "revcomp/evolution.hpp"
#include "revcomp/families.hpp"
#include "revcomp/rng.hpp"
#include "revcomp/sim.hpp"

namespace {

using namespace revcomp;

Circuit bench_circuit(int n_qubits, int length, std::uint64_t seed) {
  Rng rng(seed);
  return random_circuit(n_qubits, length, rng);
}

void BM_ApplyCircuit(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Circuit circuit = bench_circuit(n, 64, 1);
  TrainingSet training = gen_prime(std::min(n, 6));
  SparseState input = training.states()[0];
  if (input.n_qubits() != n) {
    // widen by reinterpreting the keys on n qubits (primes stay below 2^6)
    std::vector<SparseState::Term> terms = input.terms();
    input = SparseState(n, std::move(terms));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_circuit(input, circuit));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(circuit.size()) *
                          static_cast<std::int64_t>(input.support_size()));
}
BENCHMARK(BM_ApplyCircuit)->Arg(6)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_Fitness(benchmark::State& state) {
  TrainingSet training = gen_m_particle(6, 3);  // 20 single-key states
  Circuit circuit = bench_circuit(6, static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fitness(circuit, training, 0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(circuit.size()) * 20);
}
BENCHMARK(BM_Fitness)->Arg(8)->Arg(32)->Arg(128);

void BM_PermutationTable(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Circuit circuit = bench_circuit(n, 48, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(permutation_table(circuit));
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_PermutationTable)->Arg(8)->Arg(10)->Arg(12);

void BM_SerializeParse(benchmark::State& state) {
  Circuit circuit = bench_circuit(8, static_cast<int>(state.range(0)), 4);
  for (auto _ : state) {
    std::string text = serialize_circuit(circuit);
    benchmark::DoNotOptimize(parse_circuit(text, 8));
  }
}
BENCHMARK(BM_SerializeParse)->Arg(16)->Arg(64);

void BM_EaGeneration(benchmark::State& state) {
  // One full search on a small instance; items are fitness evaluations.
  TrainingSet training = gen_prime(5);
  std::int64_t evals = 0;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    EAParams params;
    params.seed = seed++;
    params.max_generations = 30;
    params.restarts = 1;
    EAResult result = ea_disentangle(training, 0, params);
    evals += result.evaluations_used;
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(evals);
}
BENCHMARK(BM_EaGeneration);

}  // namespace

BENCHMARK_MAIN();
