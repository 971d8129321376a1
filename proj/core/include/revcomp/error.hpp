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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace revcomp {

/// Base class for every error the library raises.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A gate references an out-of-range qubit or repeats a qubit.
struct InvalidGateError : Error {
  using Error::Error;
};

/// Operands disagree on register width, or a width limit is exceeded.
struct DimensionError : Error {
  using Error::Error;
};

/// Circuit-string syntax error. `position` is a byte offset into the input.
struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

/// Malformed file, unreadable path, or version mismatch.
struct IoError : Error {
  using Error::Error;
};

/// A family specification violates its constraints.
struct InvalidSpecError : Error {
  using Error::Error;
};

/// More trash qubits requested than the union support permits.
struct InfeasibleTargetError : Error {
  using Error::Error;
};

/// An input value violates an operation's precondition.
struct InvalidInputError : Error {
  using Error::Error;
};

}  // namespace revcomp
