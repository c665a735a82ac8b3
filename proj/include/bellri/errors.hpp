// Copyright 2026 The bellri Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace bellri {

/// An argument lies outside the domain of an operation (visibility outside
/// [0, 1], a non-unitary matrix, an unknown CHSH plane, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A value failed one of its type invariants. `invariant()` names the
/// violated property ("hermitian", "trace", "positive-semidefinite", ...).
class InvariantError : public std::runtime_error {
 public:
  InvariantError(std::string invariant, const std::string& detail)
      : std::runtime_error(invariant + ": " + detail),
        invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// Malformed serialized input (JSON structure, state spec grammar).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bellri
