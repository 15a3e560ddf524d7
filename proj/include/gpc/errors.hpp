// Copyright 2026 The gpcalc Authors
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

namespace gpc {

/// Base for every error the library raises. `kind()` is a stable,
/// machine-readable tag used by the CLI error document.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

/// A series, quadrature or iteration failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error("convergence", what) {}
};

/// Evaluation requested exactly at a singular point (e.g. half-life at the peak).
class SingularPointError : public Error {
 public:
  explicit SingularPointError(const std::string& what) : Error("singular_point", what) {}
};

/// A search (root bracketing, peak location) found nothing to return.
class NotFoundError : public Error {
 public:
  explicit NotFoundError(const std::string& what) : Error("not_found", what) {}
};

/// Malformed or inconsistent input data.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error("data", what) {}
};

}  // namespace gpc
