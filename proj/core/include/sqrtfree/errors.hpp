// Copyright 2026 The sqrtfree Authors
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

namespace sqrtfree {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not agree, or a matrix is not square/symmetric.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An iterative kernel hit its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A matrix expected to be positive definite is not.
class DefinitenessError : public Error {
 public:
  DefinitenessError(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}

  /// The offending (smallest) eigenvalue or pivot.
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for this kind of problem.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A combinatorial enumeration would exceed its size guard.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (CSV, config). Carries a 1-based line number, 0 if n/a.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Invalid run configuration: unknown key, bad value, violated invariant.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sqrtfree
