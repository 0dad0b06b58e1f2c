/*
 * Copyright 2026 The bibcount Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BIBCOUNT_ERROR_HPP_
#define BIBCOUNT_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bibcount {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid input data. Carries the 1-based line number when the
// error came from a line-oriented file (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A Publication or corpus that violates a data invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Invalid generator or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Aggregation levels that do not fit together (e.g. basic above object).
class LevelError : public Error {
 public:
  using Error::Error;
};

// Score-function parameter outside its documented range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A score function needs a per-author attribute the data does not carry.
class MissingAttributeError : public Error {
 public:
  MissingAttributeError(const std::string& attribute, const std::string& where)
      : Error("missing attribute '" + attribute + "' (" + where + ")"),
        attribute_(attribute) {}

  const std::string& attribute() const noexcept { return attribute_; }

 private:
  std::string attribute_;
};

// Input too large for an exact (enumerating) algorithm.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Too little data for a statistic to be defined.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Method is registered as metadata only and cannot be executed.
class StubMethodError : public Error {
 public:
  explicit StubMethodError(const std::string& method)
      : Error("stub method '" + method +
              "': formula not available, method is metadata only") {}
};

// Method name not present in the registry.
class UnknownMethodError : public Error {
 public:
  explicit UnknownMethodError(const std::string& method)
      : Error("unknown method '" + method + "'") {}
};

// Registry declarations that contradict each other or the implementation.
class LintError : public Error {
 public:
  using Error::Error;
};

}  // namespace bibcount

#endif  // BIBCOUNT_ERROR_HPP_
