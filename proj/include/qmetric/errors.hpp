// Copyright 2026 The qmetric Authors
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

namespace qmetric {

/// Root of the library's exception hierarchy. Each subclass maps onto one
/// status code of the C API.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid metric or generator parameter (c, p, rho, gamma, probabilities).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Mismatched state dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (non-finite entries, invalid assignment vectors,
/// infeasible assignment matrices, empty batches).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Time step outside the trajectory window.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Problem too large for an exhaustive or dynamic-programming solver.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Operation requires a property the inputs do not have (e.g. a symmetric
/// base distance).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// File or text could not be parsed. The message carries the source and
/// line number when they are known.
class ParseError : public Error {
 public:
  ParseError(const std::string& detail, int line = 0, const std::string& source = {})
      : Error(format(detail, line, source)), detail_(detail), line_(line) {}

  /// Message without source and line.
  const std::string& detail() const noexcept { return detail_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& detail, int line, const std::string& source) {
    std::string where = source;
    if (line > 0) where += source.empty() ? "line " + std::to_string(line) : ":" + std::to_string(line);
    return where.empty() ? detail : where + ": " + detail;
  }

  std::string detail_;
  int line_ = 0;
};

/// Internal invariant violated; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmetric
