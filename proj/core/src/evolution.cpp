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

#include "revcomp/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>
#include <utility>

#include "revcomp/sim.hpp"

namespace revcomp {

namespace {

constexpr int kMaxMutationArity = 3;
constexpr int kDedupAttempts = 100;
constexpr double kFitnessEps = 1e-12;

int resolve_init_length(const EAParams& params, int n_qubits) {
  return params.init_max_length > 0 ? params.init_max_length : 2 * n_qubits;
}

/// Fitness desc, then gate count asc, then birth order asc: a total order.
bool better(const Candidate& a, const Candidate& b) {
  if (a.fitness != b.fitness) return a.fitness > b.fitness;
  if (a.circuit.size() != b.circuit.size()) return a.circuit.size() < b.circuit.size();
  return a.birth_order < b.birth_order;
}

int draw_k(const Circuit& circuit, Rng& rng) {
  int cap = std::min<int>(kMaxMutationArity, static_cast<int>(circuit.size()));
  return 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cap)));
}

/// Floyd sampling of k distinct positions in [0, size); returned ascending.
std::vector<std::size_t> distinct_positions(std::size_t size, int k, Rng& rng) {
  std::set<std::size_t> chosen;
  for (std::size_t j = size - static_cast<std::size_t>(k); j < size; ++j) {
    std::size_t t = static_cast<std::size_t>(rng.below(j + 1));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

struct Evaluator {
  const TrainingSet& training;
  BasisKey zero_mask;
  double length_penalty;
  std::int64_t evaluations = 0;

  double operator()(const Circuit& circuit) {
    ++evaluations;
    return masked_fitness(circuit, training, zero_mask, length_penalty);
  }

  bool solved(const Circuit& circuit) const {
    thread_local std::vector<CompiledGate> gates;
    compile_circuit_into(circuit, gates);
    for (const SparseState& s : training.states()) {
      for (const SparseState::Term& t : s.terms()) {
        if (apply_to_key(t.key, gates) & zero_mask) return false;
      }
    }
    return true;
  }
};

std::vector<std::vector<std::string>> snapshot_support(const TrainingSet& training,
                                                       const Circuit& circuit) {
  std::vector<std::vector<std::string>> snapshot;
  snapshot.reserve(training.size());
  for (const SparseState& s : training.states()) {
    SparseState mapped = apply_circuit(s, circuit);
    std::vector<std::string> kets;
    kets.reserve(mapped.support_size());
    for (const SparseState::Term& t : mapped.terms()) {
      kets.push_back(ket_string(t.key, mapped.n_qubits()));
    }
    snapshot.push_back(std::move(kets));
  }
  return snapshot;
}

struct AttemptResult {
  Candidate best;
  bool success = false;
  int generations = 0;
  std::vector<TraceRecord> trace;
};

class Attempt {
 public:
  Attempt(const TrainingSet& training, const EAParams& params, const EaOptions& options,
          Evaluator& eval, std::uint64_t seed)
      : training_(training), params_(params), options_(options), eval_(eval), rng_(seed) {}

  AttemptResult run() {
    const int n = training_.n_qubits();
    population_ = init_population(params_, n, rng_);
    for (Candidate& c : population_) {
      c.fitness = eval_(c.circuit);
      c.birth_order = next_birth_++;
    }
    std::sort(population_.begin(), population_.end(), better);

    AttemptResult result;
    for (int gen = 0;; ++gen) {
      record(gen);
      if (const Candidate* winner = find_solved()) {
        result.best = *winner;
        result.success = true;
        result.generations = gen;
        break;
      }
      if (gen == params_.max_generations) {
        result.best = population_.front();
        result.generations = gen;
        break;
      }
      step();
    }
    result.trace = std::move(trace_);
    return result;
  }

 private:
  void record(int gen) {
    TraceRecord r;
    r.generation = gen;
    r.best_fitness = population_.front().fitness;
    r.best_gate_count = static_cast<int>(population_.front().circuit.size());
    r.population_size = static_cast<int>(population_.size());
    r.stage = options_.stage_index;
    r.evaluations = eval_.evaluations;
    if (options_.snapshot_support) {
      r.support_snapshot = snapshot_support(training_, population_.front().circuit);
    }
    trace_.push_back(std::move(r));
  }

  /// A candidate solves the stage when its mass term is exactly 1, i.e. every
  /// support element of every transformed training state clears the mask. The
  /// fitness filter only avoids running the exact check on hopeless
  /// candidates; the combinatorial check decides.
  const Candidate* find_solved() const {
    for (const Candidate& c : population_) {
      double mass = c.fitness + params_.length_penalty * static_cast<double>(c.circuit.size());
      if (mass < 1.0 - kFitnessEps) continue;
      if (eval_.solved(c.circuit)) return &c;
    }
    return nullptr;
  }

  void step() {
    const int n = training_.n_qubits();
    // Parents are the mu best; children draw a parent and one operator each.
    std::size_t mu = static_cast<std::size_t>(
        std::min<int>(params_.parent_count, static_cast<int>(population_.size())));
    std::vector<Candidate> pool(population_.begin(),
                                population_.begin() + static_cast<std::ptrdiff_t>(mu));
    pool.reserve(mu + static_cast<std::size_t>(params_.children_per_generation));
    for (int i = 0; i < params_.children_per_generation; ++i) {
      const Candidate& parent = pool[rng_.below(mu)];
      Circuit child = mutate(parent.circuit);
      Candidate c;
      c.canonical_key = serialize_circuit(child);
      c.circuit = std::move(child);
      c.fitness = eval_(c.circuit);
      c.birth_order = next_birth_++;
      pool.push_back(std::move(c));
    }
    std::sort(pool.begin(), pool.end(), better);
    // Survivors: best mu_total with canonical-key dedup, refilled with fresh
    // random candidates when dedup leaves the pool short.
    std::unordered_set<std::string> seen;
    std::vector<Candidate> survivors;
    survivors.reserve(static_cast<std::size_t>(params_.population_size));
    for (Candidate& c : pool) {
      if (static_cast<int>(survivors.size()) == params_.population_size) break;
      if (seen.insert(c.canonical_key).second) survivors.push_back(std::move(c));
    }
    int max_len = resolve_init_length(params_, n);
    while (static_cast<int>(survivors.size()) < params_.population_size) {
      Candidate fresh;
      for (int attempt = 0; attempt < kDedupAttempts; ++attempt) {
        Circuit circuit = random_circuit(n, 1 + static_cast<int>(rng_.below(
                                                static_cast<std::uint64_t>(max_len))),
                                         rng_);
        std::string key = serialize_circuit(circuit);
        if (seen.insert(key).second || attempt == kDedupAttempts - 1) {
          fresh.circuit = std::move(circuit);
          fresh.canonical_key = std::move(key);
          break;
        }
      }
      fresh.fitness = eval_(fresh.circuit);
      fresh.birth_order = next_birth_++;
      survivors.push_back(std::move(fresh));
    }
    std::sort(survivors.begin(), survivors.end(), better);
    population_ = std::move(survivors);
  }

  Circuit mutate(const Circuit& parent) {
    double weight_total = 0.0;
    for (double w : params_.mutation_weights) weight_total += w;
    double draw = rng_.unit() * weight_total;
    int op = 0;
    for (; op < 4; ++op) {
      draw -= params_.mutation_weights[static_cast<std::size_t>(op)];
      if (draw < 0.0) break;
    }
    switch (op) {
      case 0: return mutate_add(parent, rng_);
      case 1: return mutate_remove(parent, rng_);
      case 2: return mutate_permute(parent, rng_);
      case 3: return mutate_repeat(parent, rng_);
      default: return mutate_replace(parent, rng_);
    }
  }

  const TrainingSet& training_;
  const EAParams& params_;
  const EaOptions& options_;
  Evaluator& eval_;
  Rng rng_;
  std::vector<Candidate> population_;
  std::vector<TraceRecord> trace_;
  std::int64_t next_birth_ = 0;
};

}  // namespace

void EAParams::validate() const {
  if (population_size < 1 || parent_count < 1 || children_per_generation < 1) {
    throw InvalidInputError("population, parent, and child counts must be positive");
  }
  if (parent_count + children_per_generation < population_size) {
    throw InvalidInputError("parent_count + children_per_generation must cover population_size");
  }
  if (max_generations < 0) throw InvalidInputError("max_generations must be non-negative");
  if (restarts < 1) throw InvalidInputError("restarts must be positive");
  if (length_penalty < 0.0) throw InvalidInputError("length_penalty must be non-negative");
  if (init_max_length < 0) throw InvalidInputError("init_max_length must be non-negative");
  double weight_total = 0.0;
  for (double w : mutation_weights) {
    if (w < 0.0) throw InvalidInputError("mutation weights must be non-negative");
    weight_total += w;
  }
  if (weight_total <= 0.0) throw InvalidInputError("mutation weights must not all be zero");
}

Gate random_gate(int n_qubits, Rng& rng) {
  int kinds = n_qubits >= 3 ? 3 : n_qubits;
  switch (rng.below(static_cast<std::uint64_t>(kinds))) {
    case 0:
      return Gate::x(static_cast<int>(rng.below(static_cast<std::uint64_t>(n_qubits))));
    case 1: {
      int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_qubits)));
      int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_qubits - 1)));
      if (c >= t) ++c;
      return Gate::cx(t, c);
    }
    default: {
      int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_qubits)));
      int c1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_qubits - 1)));
      if (c1 >= t) ++c1;
      int c2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_qubits - 2)));
      int lo = std::min(t, c1);
      int hi = std::max(t, c1);
      if (c2 >= lo) ++c2;
      if (c2 >= hi) ++c2;
      return Gate::ccx(t, c1, c2);
    }
  }
}

Circuit random_circuit(int n_qubits, int length, Rng& rng) {
  Circuit circuit(n_qubits);
  for (int i = 0; i < length; ++i) circuit.append(random_gate(n_qubits, rng));
  return circuit;
}

std::vector<Candidate> init_population(const EAParams& params, int n_qubits, Rng& rng) {
  params.validate();
  int max_len = resolve_init_length(params, n_qubits);
  std::vector<Candidate> population;
  population.reserve(static_cast<std::size_t>(params.population_size));
  std::unordered_set<std::string> seen;
  for (int i = 0; i < params.population_size; ++i) {
    Candidate c;
    for (int attempt = 0; attempt < kDedupAttempts; ++attempt) {
      Circuit circuit =
          random_circuit(n_qubits, 1 + static_cast<int>(rng.below(
                                           static_cast<std::uint64_t>(max_len))),
                         rng);
      std::string key = serialize_circuit(circuit);
      if (seen.insert(key).second || attempt == kDedupAttempts - 1) {
        c.circuit = std::move(circuit);
        c.canonical_key = std::move(key);
        break;
      }
    }
    c.birth_order = i;
    population.push_back(std::move(c));
  }
  return population;
}

Circuit mutate_add(const Circuit& circuit, Rng& rng) {
  std::vector<Gate> gates = circuit.gates();
  std::size_t pos = static_cast<std::size_t>(rng.below(gates.size() + 1));
  gates.insert(gates.begin() + static_cast<std::ptrdiff_t>(pos),
               random_gate(circuit.n_qubits(), rng));
  return Circuit(circuit.n_qubits(), std::move(gates));
}

Circuit mutate_remove(const Circuit& circuit, Rng& rng) {
  if (circuit.empty()) return mutate_add(circuit, rng);
  int k = draw_k(circuit, rng);
  std::vector<std::size_t> victims = distinct_positions(circuit.size(), k, rng);
  std::vector<Gate> gates;
  gates.reserve(circuit.size() - static_cast<std::size_t>(k));
  std::size_t v = 0;
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (v < victims.size() && victims[v] == i) {
      ++v;
      continue;
    }
    gates.push_back(circuit.gates()[i]);
  }
  return Circuit(circuit.n_qubits(), std::move(gates));
}

Circuit mutate_permute(const Circuit& circuit, Rng& rng) {
  if (circuit.empty()) return mutate_add(circuit, rng);
  std::vector<Gate> gates = circuit.gates();
  rng.shuffle(gates);
  return Circuit(circuit.n_qubits(), std::move(gates));
}

Circuit mutate_repeat(const Circuit& circuit, Rng& rng) {
  if (circuit.empty()) return mutate_add(circuit, rng);
  int k = draw_k(circuit, rng);
  std::vector<Gate> gates = circuit.gates();
  for (int i = 0; i < k; ++i) {
    Gate copy = circuit.gates()[rng.below(circuit.size())];
    std::size_t pos = static_cast<std::size_t>(rng.below(gates.size() + 1));
    gates.insert(gates.begin() + static_cast<std::ptrdiff_t>(pos), copy);
  }
  return Circuit(circuit.n_qubits(), std::move(gates));
}

Circuit mutate_replace(const Circuit& circuit, Rng& rng) {
  if (circuit.empty()) return mutate_add(circuit, rng);
  int k = draw_k(circuit, rng);
  std::vector<std::size_t> slots = distinct_positions(circuit.size(), k, rng);
  std::vector<Gate> gates = circuit.gates();
  for (std::size_t pos : slots) gates[pos] = random_gate(circuit.n_qubits(), rng);
  return Circuit(circuit.n_qubits(), std::move(gates));
}

EAResult ea_disentangle(const TrainingSet& training, int target, const EAParams& params,
                        const EaOptions& options) {
  params.validate();
  const int n = training.n_qubits();
  std::vector<int> required = options.protected_qubits;
  required.push_back(target);
  BasisKey zero_mask = qubits_mask(n, required);
  Evaluator eval{training, zero_mask, params.length_penalty};

  EAResult result;
  Circuit identity(n);

  // An input that is already disentangled needs no search at all.
  if (eval.solved(identity)) {
    Candidate best;
    best.circuit = identity;
    best.canonical_key = serialize_circuit(identity);
    best.fitness = eval(identity);
    result.best = std::move(best);
    result.success = true;
    result.attempts_used = 0;
    result.evaluations_used = eval.evaluations;
    TraceRecord r;
    r.generation = 0;
    r.best_fitness = result.best.fitness;
    r.best_gate_count = 0;
    r.population_size = params.population_size;
    r.stage = options.stage_index;
    r.evaluations = eval.evaluations;
    if (options.snapshot_support) r.support_snapshot = snapshot_support(training, identity);
    result.trace.push_back(std::move(r));
    return result;
  }

  bool have_best = false;
  for (int i = 0; i < params.restarts; ++i) {
    Attempt attempt(training, params, options, eval, params.seed + static_cast<std::uint64_t>(i));
    AttemptResult r = attempt.run();
    if (!have_best || r.success || better(r.best, result.best)) {
      result.best = r.best;
      result.success = r.success;
      result.generations_used = r.generations;
      result.trace = std::move(r.trace);
      have_best = true;
    }
    result.attempts_used = i + 1;
    if (result.success) break;
  }
  result.evaluations_used = eval.evaluations;
  return result;
}

EAResult random_search(const TrainingSet& training, int target, std::int64_t budget,
                       int max_length, std::uint64_t seed, bool cascade_prefix) {
  if (budget < 1) throw InvalidInputError("random_search budget must be positive");
  if (max_length < 1) throw InvalidInputError("random_search max_length must be positive");
  const int n = training.n_qubits();
  BasisKey zero_mask = qubits_mask(n, std::vector<int>{target});
  Evaluator eval{training, zero_mask, 0.0};

  EAResult result;
  Circuit identity(n);
  if (eval.solved(identity)) {
    result.best = Candidate{identity, eval(identity), serialize_circuit(identity), 0};
    result.success = true;
    result.evaluations_used = eval.evaluations;
    result.trace.push_back(TraceRecord{0, result.best.fitness, 0, 1, -1, eval.evaluations, {}});
    return result;
  }

  Rng rng(seed);
  bool have_best = false;
  for (std::int64_t sample = 0; sample < budget; ++sample) {
    Circuit circuit(n);
    if (cascade_prefix && n >= 2) {
      // Empirically useful prior: a CNOT cascade along a random qubit chain.
      std::vector<int> chain(static_cast<std::size_t>(n));
      for (int q = 0; q < n; ++q) chain[static_cast<std::size_t>(q)] = q;
      rng.shuffle(chain);
      std::size_t links = 1 + rng.below(static_cast<std::uint64_t>(n - 1));
      for (std::size_t i = 0; i < links; ++i) {
        circuit.append(Gate::cx(chain[i + 1], chain[i]));
      }
    }
    int tail = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_length)));
    for (int i = 0; i < tail; ++i) circuit.append(random_gate(n, rng));

    Candidate c;
    c.fitness = eval(circuit);
    c.birth_order = sample;
    if (!have_best || c.fitness > result.best.fitness ||
        (c.fitness == result.best.fitness && circuit.size() < result.best.circuit.size())) {
      c.circuit = circuit;
      c.canonical_key = serialize_circuit(circuit);
      result.best = std::move(c);
      have_best = true;
      result.trace.push_back(TraceRecord{static_cast<int>(sample), result.best.fitness,
                                         static_cast<int>(result.best.circuit.size()), 1, -1,
                                         eval.evaluations, {}});
      if (result.best.fitness >= 1.0 - kFitnessEps && eval.solved(result.best.circuit)) {
        result.success = true;
        result.generations_used = static_cast<int>(sample);
        break;
      }
    }
  }
  result.attempts_used = 1;
  result.evaluations_used = eval.evaluations;
  if (!result.success) result.generations_used = static_cast<int>(budget);
  return result;
}

}  // namespace revcomp
