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

#include "revcomp/families.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "revcomp/rng.hpp"

namespace revcomp {

namespace {

// Sieve and enumeration guards; the benchmark families live at n <= 8, the
// generators stay exact well beyond that.
constexpr int kSieveMaxQubits = 24;
constexpr int kEnumMaxQubits = 24;
constexpr int kRandomMaxQubits = 62;

SparseState uniform_over(int n, const std::vector<BasisKey>& keys) {
  double amp = 1.0 / std::sqrt(static_cast<double>(keys.size()));
  std::vector<SparseState::Term> terms;
  terms.reserve(keys.size());
  for (BasisKey k : keys) terms.push_back({k, Amplitude{amp, 0.0}});
  return SparseState(n, std::move(terms));
}

}  // namespace

const char* family_kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Unary: return "unary";
    case FamilyKind::Ghz: return "ghz";
    case FamilyKind::RandomSupport: return "random";
    case FamilyKind::Prime: return "prime";
    case FamilyKind::MParticle: return "m_particle";
  }
  return "?";
}

std::optional<FamilyKind> family_kind_from_name(const std::string& name) {
  if (name == "unary") return FamilyKind::Unary;
  if (name == "ghz") return FamilyKind::Ghz;
  if (name == "random" || name == "random_support") return FamilyKind::RandomSupport;
  if (name == "prime") return FamilyKind::Prime;
  if (name == "m_particle") return FamilyKind::MParticle;
  return std::nullopt;
}

void FamilySpec::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw InvalidSpecError("n_qubits must be in [1, 64], got " + std::to_string(n_qubits));
  }
  switch (kind) {
    case FamilyKind::Unary:
      if (n_qubits < 2) throw InvalidSpecError("unary family requires n >= 2");
      break;
    case FamilyKind::Ghz:
      if (n_qubits < 2) throw InvalidSpecError("ghz family requires n >= 2");
      break;
    case FamilyKind::Prime:
      if (n_qubits < 2) throw InvalidSpecError("prime family requires 2^n > 2, i.e. n >= 2");
      if (n_qubits > kSieveMaxQubits) {
        throw InvalidSpecError("prime family limited to n <= " + std::to_string(kSieveMaxQubits));
      }
      break;
    case FamilyKind::RandomSupport: {
      if (n_qubits > kRandomMaxQubits) {
        throw InvalidSpecError("random family limited to n <= " +
                               std::to_string(kRandomMaxQubits));
      }
      int size = support_size == 0 ? n_qubits : support_size;
      if (size < 1) throw InvalidSpecError("support_size must be positive");
      if (static_cast<std::uint64_t>(size) > (std::uint64_t{1} << n_qubits)) {
        throw InvalidSpecError("support_size " + std::to_string(size) + " exceeds 2^n");
      }
      break;
    }
    case FamilyKind::MParticle:
      if (n_qubits > kEnumMaxQubits) {
        throw InvalidSpecError("m_particle family limited to n <= " +
                               std::to_string(kEnumMaxQubits));
      }
      if (m < 1 || m > n_qubits / 2) {
        throw InvalidSpecError(
            "m_particle requires 1 <= m <= n/2; m=" + std::to_string(m) + ", n=" +
            std::to_string(n_qubits) +
            (m >= 1 ? " is complement-equivalent to m=" + std::to_string(n_qubits - m) : ""));
      }
      break;
  }
}

std::string FamilySpec::label() const {
  if (kind == FamilyKind::MParticle) return std::to_string(m) + "_particle";
  return family_kind_name(kind);
}

TrainingSet gen_unary(int n) {
  if (n < 2 || n > kMaxQubits) throw InvalidSpecError("unary family requires 2 <= n <= 64");
  std::vector<SparseState> states;
  states.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    states.push_back(SparseState::basis(n, qubit_mask(n, j)));
  }
  return TrainingSet::uniform(std::move(states));
}

TrainingSet gen_ghz(int n) {
  if (n < 2 || n > kMaxQubits) throw InvalidSpecError("ghz family requires 2 <= n <= 64");
  return TrainingSet::uniform({uniform_over(n, {BasisKey{0}, width_mask(n)})});
}

TrainingSet gen_random_support(int n, int support_size, std::uint64_t seed) {
  FamilySpec spec{FamilyKind::RandomSupport, n, 0, support_size, seed};
  spec.validate();
  std::uint64_t size = static_cast<std::uint64_t>(support_size == 0 ? n : support_size);
  std::uint64_t space = std::uint64_t{1} << n;
  // Floyd's sampling without replacement: uniform, and O(size) draws from the
  // seeded stream, so a (seed, n, size) triple pins the support everywhere.
  Rng rng(seed);
  std::set<BasisKey> chosen;
  for (std::uint64_t j = space - size; j < space; ++j) {
    BasisKey t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return TrainingSet::uniform({uniform_over(n, {chosen.begin(), chosen.end()})});
}

TrainingSet gen_prime(int n) {
  FamilySpec spec{FamilyKind::Prime, n, 0, 0, 0};
  spec.validate();
  std::vector<BasisKey> primes = primes_below(std::uint64_t{1} << n);
  return TrainingSet::uniform({uniform_over(n, primes)});
}

TrainingSet gen_m_particle(int n, int m) {
  FamilySpec spec{FamilyKind::MParticle, n, m, 0, 0};
  spec.validate();
  std::vector<BasisKey> keys;
  for (BasisKey k = 0; k < (BasisKey{1} << n); ++k) {
    if (std::popcount(k) == m) keys.push_back(k);
  }
  // Descending key order lists the leading-qubit states first and makes
  // gen_m_particle(n, 1) coincide with gen_unary(n).
  std::reverse(keys.begin(), keys.end());
  std::vector<SparseState> states;
  states.reserve(keys.size());
  for (BasisKey k : keys) states.push_back(SparseState::basis(n, k));
  return TrainingSet::uniform(std::move(states));
}

TrainingSet generate(const FamilySpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case FamilyKind::Unary: return gen_unary(spec.n_qubits);
    case FamilyKind::Ghz: return gen_ghz(spec.n_qubits);
    case FamilyKind::RandomSupport:
      return gen_random_support(spec.n_qubits, spec.support_size, spec.seed);
    case FamilyKind::Prime: return gen_prime(spec.n_qubits);
    case FamilyKind::MParticle: return gen_m_particle(spec.n_qubits, spec.m);
  }
  throw InvalidSpecError("unknown family kind");
}

std::vector<std::uint64_t> primes_below(std::uint64_t limit) {
  if (limit < 3) return {};
  std::vector<bool> composite(limit, false);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p < limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (std::uint64_t q = p * p; q < limit; q += p) composite[q] = true;
  }
  return primes;
}

int ceil_log2(std::uint64_t x) {
  if (x == 0) throw InvalidInputError("ceil_log2(0) is undefined");
  int k = 0;
  while ((std::uint64_t{1} << k) < x) ++k;
  return k;
}

int max_trash_count(const TrainingSet& training) {
  return training.n_qubits() - ceil_log2(training.union_support().size());
}

CompressionTarget default_target(const TrainingSet& training, std::optional<int> requested) {
  int budget = max_trash_count(training);
  int count = requested.value_or(budget);
  if (count < 0) throw InvalidInputError("trash count must be non-negative");
  if (count > budget) {
    throw InfeasibleTargetError("requested " + std::to_string(count) +
                                " trash qubits but the union support admits at most " +
                                std::to_string(budget));
  }
  CompressionTarget target;
  target.trash_count = count;
  target.trash_qubits.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) target.trash_qubits[static_cast<std::size_t>(i)] = i;
  return target;
}

CompressionTarget target_with_qubits(const TrainingSet& training, std::vector<int> trash_qubits) {
  qubits_mask(training.n_qubits(), trash_qubits);  // validates range + distinctness
  int budget = max_trash_count(training);
  if (static_cast<int>(trash_qubits.size()) > budget) {
    throw InfeasibleTargetError("requested " + std::to_string(trash_qubits.size()) +
                                " trash qubits but the union support admits at most " +
                                std::to_string(budget));
  }
  CompressionTarget target;
  target.trash_count = static_cast<int>(trash_qubits.size());
  target.trash_qubits = std::move(trash_qubits);
  return target;
}

}  // namespace revcomp
