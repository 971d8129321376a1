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

#include "revcomp/types.hpp"

#include <algorithm>
#include <cmath>

namespace revcomp {

namespace {

void check_width(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw DimensionError("n_qubits must be in [1, 64], got " + std::to_string(n_qubits));
  }
}

}  // namespace

std::string ket_string(BasisKey bits, int n_qubits) {
  check_width(n_qubits);
  std::string out(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if (bit_of(bits, n_qubits, q)) out[static_cast<std::size_t>(q)] = '1';
  }
  return out;
}

BasisKey parse_ket(std::string_view ket) {
  if (ket.empty() || ket.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw ParseError("ket width must be in [1, 64]", 0);
  }
  BasisKey bits = 0;
  for (std::size_t i = 0; i < ket.size(); ++i) {
    char c = ket[i];
    if (c != '0' && c != '1') throw ParseError("ket characters must be 0 or 1", i);
    bits = (bits << 1) | static_cast<BasisKey>(c == '1');
  }
  return bits;
}

BasisKey qubits_mask(int n_qubits, std::span<const int> qubits) {
  check_width(n_qubits);
  BasisKey mask = 0;
  for (int q : qubits) {
    if (q < 0 || q >= n_qubits) {
      throw DimensionError("qubit index " + std::to_string(q) + " out of range for n=" +
                           std::to_string(n_qubits));
    }
    BasisKey bit = qubit_mask(n_qubits, q);
    if (mask & bit) throw DimensionError("duplicate qubit index " + std::to_string(q));
    mask |= bit;
  }
  return mask;
}

BasisState::BasisState(BasisKey bits, int n_qubits) : bits(bits), n_qubits(n_qubits) {
  check_width(n_qubits);
  if (bits & ~width_mask(n_qubits)) {
    throw DimensionError("basis key has bits above position " + std::to_string(n_qubits - 1));
  }
}

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::CX: return "CX";
    case GateKind::CCX: return "CCX";
  }
  return "?";
}

Gate::Gate(GateKind kind, int target, std::array<int, 2> controls)
    : kind_(kind), target_(target), controls_(controls) {
  if (target_ < 0) throw InvalidGateError("negative target qubit");
  for (int c : this->controls()) {
    if (c < 0) throw InvalidGateError("negative control qubit");
    if (c == target_) throw InvalidGateError("control equals target");
  }
  if (control_count(kind_) == 2) {
    if (controls_[0] == controls_[1]) throw InvalidGateError("duplicate control qubit");
    if (controls_[0] > controls_[1]) std::swap(controls_[0], controls_[1]);
  }
}

Gate Gate::x(int target) { return Gate(GateKind::X, target, {-1, -1}); }

Gate Gate::cx(int target, int control) { return Gate(GateKind::CX, target, {control, -1}); }

Gate Gate::ccx(int target, int control1, int control2) {
  return Gate(GateKind::CCX, target, {control1, control2});
}

int Gate::max_qubit() const {
  int m = target_;
  for (int c : controls()) m = std::max(m, c);
  return m;
}

bool Gate::touches(int qubit) const {
  if (target_ == qubit) return true;
  for (int c : controls()) {
    if (c == qubit) return true;
  }
  return false;
}

Circuit::Circuit(int n_qubits, std::vector<Gate> gates)
    : n_qubits_(n_qubits), gates_(std::move(gates)) {
  check_width(n_qubits_);
  for (const Gate& g : gates_) {
    if (g.max_qubit() >= n_qubits_) {
      throw InvalidGateError("gate qubit " + std::to_string(g.max_qubit()) +
                             " out of range for n=" + std::to_string(n_qubits_));
    }
  }
}

void Circuit::append(Gate gate) {
  check_width(n_qubits_);
  if (gate.max_qubit() >= n_qubits_) {
    throw InvalidGateError("gate qubit " + std::to_string(gate.max_qubit()) +
                           " out of range for n=" + std::to_string(n_qubits_));
  }
  gates_.push_back(gate);
}

Circuit Circuit::inverse() const {
  std::vector<Gate> reversed(gates_.rbegin(), gates_.rend());
  return Circuit(n_qubits_, std::move(reversed));
}

Circuit Circuit::then(const Circuit& next) const {
  if (next.n_qubits_ != n_qubits_) {
    throw DimensionError("cannot concatenate circuits of different widths");
  }
  std::vector<Gate> all = gates_;
  all.insert(all.end(), next.gates_.begin(), next.gates_.end());
  return Circuit(n_qubits_, std::move(all));
}

GateHistogram Circuit::histogram() const {
  GateHistogram h;
  for (const Gate& g : gates_) {
    switch (g.kind()) {
      case GateKind::X: ++h.x; break;
      case GateKind::CX: ++h.cx; break;
      case GateKind::CCX: ++h.ccx; break;
    }
  }
  return h;
}

SparseState::SparseState(int n_qubits, std::vector<Term> terms) : n_qubits_(n_qubits) {
  check_width(n_qubits_);
  const BasisKey mask = width_mask(n_qubits_);
  for (const Term& t : terms) {
    if (t.key & ~mask) {
      throw DimensionError("basis key exceeds register width " + std::to_string(n_qubits_));
    }
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.key < b.key; });
  // Merge duplicate keys, then drop terms below the amplitude floor.
  terms_.reserve(terms.size());
  for (const Term& t : terms) {
    if (!terms_.empty() && terms_.back().key == t.key) {
      terms_.back().amp += t.amp;
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const Term& t) { return std::abs(t.amp) < kAmplitudeFloor; });
  double norm = norm_squared();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw Error("state norm^2 is " + std::to_string(norm) + ", expected 1");
  }
}

SparseState SparseState::basis(int n_qubits, BasisKey key) {
  return SparseState(n_qubits, {Term{key, Amplitude{1.0, 0.0}}});
}

SparseState SparseState::unchecked(int n_qubits, std::vector<Term> sorted_terms) {
  SparseState s;
  s.n_qubits_ = n_qubits;
  s.terms_ = std::move(sorted_terms);
  return s;
}

bool SparseState::contains(BasisKey key) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const Term& t, BasisKey k) { return t.key < k; });
  return it != terms_.end() && it->key == key;
}

Amplitude SparseState::amplitude(BasisKey key) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const Term& t, BasisKey k) { return t.key < k; });
  if (it == terms_.end() || it->key != key) return {0.0, 0.0};
  return it->amp;
}

double SparseState::norm_squared() const {
  double total = 0.0;
  for (const Term& t : terms_) total += std::norm(t.amp);
  return total;
}

bool approx_equal(const SparseState& a, const SparseState& b, double tol) {
  if (a.n_qubits() != b.n_qubits()) return false;
  if (a.support_size() != b.support_size()) return false;
  for (std::size_t i = 0; i < a.terms().size(); ++i) {
    if (a.terms()[i].key != b.terms()[i].key) return false;
    if (std::abs(a.terms()[i].amp - b.terms()[i].amp) > tol) return false;
  }
  return true;
}

TrainingSet::TrainingSet(std::vector<SparseState> states, std::vector<double> weights)
    : states_(std::move(states)), weights_(std::move(weights)) {
  if (states_.empty()) throw InvalidInputError("training set must be non-empty");
  if (states_.size() != weights_.size()) {
    throw InvalidInputError("training set has " + std::to_string(states_.size()) +
                            " states but " + std::to_string(weights_.size()) + " weights");
  }
  int n = states_.front().n_qubits();
  double total = 0.0;
  for (const SparseState& s : states_) {
    if (s.n_qubits() != n) throw DimensionError("training states disagree on n_qubits");
  }
  for (double w : weights_) {
    if (w < 0.0) throw InvalidInputError("negative training weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw InvalidInputError("training weights sum to " + std::to_string(total) +
                            ", expected 1");
  }
}

TrainingSet TrainingSet::uniform(std::vector<SparseState> states) {
  if (states.empty()) throw InvalidInputError("training set must be non-empty");
  std::vector<double> weights(states.size(), 1.0 / static_cast<double>(states.size()));
  return TrainingSet(std::move(states), std::move(weights));
}

std::vector<BasisKey> TrainingSet::union_support() const {
  std::vector<BasisKey> keys;
  for (const SparseState& s : states_) {
    for (const SparseState::Term& t : s.terms()) keys.push_back(t.key);
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

}  // namespace revcomp
