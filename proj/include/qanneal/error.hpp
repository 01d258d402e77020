// Copyright 2026 The qanneal Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qanneal {

// Every failure raised by the library derives from Error. The CLI maps the
// concrete type to a stable exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line() is 1-based, 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A precondition of an operation was not met by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// A value lies outside the set an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Assignment or spin vector too short for the model.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Problem too large for exhaustive enumeration.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Invalid annealing schedule or solver parameters.
class ScheduleError : public Error {
 public:
  using Error::Error;
};

class EmbeddingNotFound : public Error {
 public:
  using Error::Error;
};

// Structurally invalid problem instance (disconnected tree, cycle, ...).
class InstanceError : public Error {
 public:
  using Error::Error;
};

// Time-to-solution is infinite when the ground state was never observed.
class UndefinedTts : public Error {
 public:
  using Error::Error;
};

}  // namespace qanneal
