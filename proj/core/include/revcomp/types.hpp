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

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revcomp/error.hpp"

namespace revcomp {

using BasisKey = std::uint64_t;
using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 64;
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kAmplitudeFloor = 1e-15;

// Qubit 0 is the leftmost character of the ket string, so the n-bit ket of an
// integer label |j> reads as the usual binary numeral of j. Machine bit
// position of qubit q in an n-qubit register:
constexpr int qubit_shift(int n_qubits, int qubit) { return n_qubits - 1 - qubit; }

constexpr BasisKey qubit_mask(int n_qubits, int qubit) {
  return BasisKey{1} << qubit_shift(n_qubits, qubit);
}

constexpr int bit_of(BasisKey bits, int n_qubits, int qubit) {
  return static_cast<int>((bits >> qubit_shift(n_qubits, qubit)) & 1u);
}

/// All n bits set. Valid for 1 <= n <= 64.
constexpr BasisKey width_mask(int n_qubits) {
  return n_qubits >= 64 ? ~BasisKey{0} : (BasisKey{1} << n_qubits) - 1;
}

std::string ket_string(BasisKey bits, int n_qubits);

/// Inverse of ket_string; width is ket.size(). Throws ParseError on non-binary
/// characters or unsupported width.
BasisKey parse_ket(std::string_view ket);

/// OR of qubit_mask over `qubits`. Validates range and distinctness.
BasisKey qubits_mask(int n_qubits, std::span<const int> qubits);

/// One computational basis vector |b0 b1 ... b_{n-1}>.
struct BasisState {
  BasisKey bits = 0;
  int n_qubits = 0;

  BasisState() = default;
  BasisState(BasisKey bits, int n_qubits);

  std::string ket() const { return ket_string(bits, n_qubits); }

  friend auto operator<=>(const BasisState&, const BasisState&) = default;
};

enum class GateKind : std::uint8_t { X, CX, CCX };

constexpr int control_count(GateKind kind) {
  return kind == GateKind::X ? 0 : kind == GateKind::CX ? 1 : 2;
}

const char* gate_name(GateKind kind);

/// A NOT, CNOT, or Toffoli gate. Controls are kept in ascending order; all
/// qubit indices are distinct. Range against a register width is checked by
/// the owning Circuit.
class Gate {
 public:
  static Gate x(int target);
  static Gate cx(int target, int control);
  static Gate ccx(int target, int control1, int control2);

  GateKind kind() const { return kind_; }
  int target() const { return target_; }
  std::span<const int> controls() const {
    return {controls_.data(), static_cast<std::size_t>(control_count(kind_))};
  }
  int max_qubit() const;
  bool touches(int qubit) const;

  friend bool operator==(const Gate&, const Gate&) = default;

 private:
  Gate(GateKind kind, int target, std::array<int, 2> controls);

  GateKind kind_;
  int target_;
  std::array<int, 2> controls_;  // ascending; unused slots are -1
};

struct GateHistogram {
  int x = 0;
  int cx = 0;
  int ccx = 0;
  int total() const { return x + cx + ccx; }
  friend bool operator==(const GateHistogram&, const GateHistogram&) = default;
};

/// An ordered gate list over an n-qubit register; first gate applies first.
/// Every circuit from this gate set denotes a permutation of the 2^n basis
/// states.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n_qubits, std::vector<Gate> gates = {});

  int n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  void append(Gate gate);

  /// Reversed gate list; exact inverse since every gate is self-inverse.
  Circuit inverse() const;

  /// This circuit followed by `next`.
  Circuit then(const Circuit& next) const;

  GateHistogram histogram() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int n_qubits_ = 0;
  std::vector<Gate> gates_;
};

/// Finite map from basis keys to complex amplitudes; the only state
/// representation the engine needs. Terms are sorted by key, amplitudes of
/// magnitude below kAmplitudeFloor are dropped, and the norm is validated to
/// within kNormTolerance.
class SparseState {
 public:
  struct Term {
    BasisKey key;
    Amplitude amp;
    friend bool operator==(const Term&, const Term&) = default;
  };

  SparseState(int n_qubits, std::vector<Term> terms);

  static SparseState basis(int n_qubits, BasisKey key);

  /// Rebuilds from terms already known sorted, unique, and normalized
  /// (e.g. after a permutation of keys). Skips validation.
  static SparseState unchecked(int n_qubits, std::vector<Term> sorted_terms);

  int n_qubits() const { return n_qubits_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }
  bool contains(BasisKey key) const;
  Amplitude amplitude(BasisKey key) const;
  double norm_squared() const;

  friend bool operator==(const SparseState&, const SparseState&) = default;

 private:
  SparseState() = default;

  int n_qubits_ = 0;
  std::vector<Term> terms_;
};

bool approx_equal(const SparseState& a, const SparseState& b, double tol = 1e-12);

/// The states to compress, with non-negative weights summing to one.
class TrainingSet {
 public:
  TrainingSet(std::vector<SparseState> states, std::vector<double> weights);

  static TrainingSet uniform(std::vector<SparseState> states);

  int n_qubits() const { return states_.front().n_qubits(); }
  const std::vector<SparseState>& states() const { return states_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return states_.size(); }

  /// Sorted, de-duplicated union of all supports.
  std::vector<BasisKey> union_support() const;

  friend bool operator==(const TrainingSet&, const TrainingSet&) = default;

 private:
  std::vector<SparseState> states_;
  std::vector<double> weights_;
};

}  // namespace revcomp
