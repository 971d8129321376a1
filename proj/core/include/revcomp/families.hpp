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

enum class FamilyKind { Unary, Ghz, RandomSupport, Prime, MParticle };

const char* family_kind_name(FamilyKind kind);
std::optional<FamilyKind> family_kind_from_name(const std::string& name);

/// Which benchmark family to build. Basis-state families (unary, m_particle)
/// train on each basis state separately; ghz, prime, and random train on the
/// single superposition state.
struct FamilySpec {
  FamilyKind kind = FamilyKind::Unary;
  int n_qubits = 0;
  int m = 0;                 // m_particle only
  int support_size = 0;      // random_support only; 0 means n_qubits
  std::uint64_t seed = 0;    // random_support only

  /// Throws InvalidSpecError when constraints are violated; in particular
  /// m_particle requires 1 <= m <= n/2 (larger m is complement-equivalent).
  void validate() const;

  /// Stable label used in artifacts: "unary", "ghz", "random", "prime",
  /// "<m>_particle".
  std::string label() const;
};

/// The trash qubits a compression run must clear.
struct CompressionTarget {
  int trash_count = 0;
  std::vector<int> trash_qubits;

  friend bool operator==(const CompressionTarget&, const CompressionTarget&) = default;
};

/// n training states; the j-th is the basis state with only qubit j set.
TrainingSet gen_unary(int n);

/// One state, (|0...0> + |1...1>)/sqrt(2).
TrainingSet gen_ghz(int n);

/// One uniform state over `support_size` distinct basis states sampled
/// without replacement (Floyd's algorithm over the seeded PRNG, so a seed
/// pins the support on every platform). support_size 0 defaults to n.
TrainingSet gen_random_support(int n, int support_size, std::uint64_t seed);

/// One uniform state over {|j> : j prime, j < 2^n}.
TrainingSet gen_prime(int n);

/// C(n, m) training states, one per Hamming-weight-m basis state, enumerated
/// in descending key order (so gen_m_particle(n, 1) == gen_unary(n)).
TrainingSet gen_m_particle(int n, int m);

TrainingSet generate(const FamilySpec& spec);

/// Simple sieve of Eratosthenes; primes strictly below `limit`.
std::vector<std::uint64_t> primes_below(std::uint64_t limit);

/// Smallest k with 2^k >= x; x >= 1.
int ceil_log2(std::uint64_t x);

/// Information-theoretic trash budget: n - ceil(log2(U)) with U the union
/// support size.
int max_trash_count(const TrainingSet& training);

/// Default target: `requested` trash qubits if given, else the full budget;
/// the trash set is the leading qubits [0, trash_count). Throws
/// InfeasibleTargetError when requested exceeds the budget.
CompressionTarget default_target(const TrainingSet& training,
                                 std::optional<int> requested = std::nullopt);

/// Explicit trash set; validates range, distinctness, and the budget.
CompressionTarget target_with_qubits(const TrainingSet& training,
                                     std::vector<int> trash_qubits);

}  // namespace revcomp
