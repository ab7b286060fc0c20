// Copyright 2026 The PolyPA Authors
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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polypa {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Generation parameters that cannot be satisfied (e.g. ell > n0).
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

// Malformed seed-graph or weight-function specification.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A weight table was queried past its end with the strict tail rule.
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

// No eligible weight left to sample from.
class CannotSatisfy : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant or misuse of a data structure.
class LogicError : public Error {
 public:
  using Error::Error;
};

// Input that failed to parse. `line` is 1-based for text input and 0 for
// binary input; `offset` is the byte offset of the offending record.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::uint64_t line, std::uint64_t offset)
      : Error(what + " (line " + std::to_string(line) + ", offset " +
              std::to_string(offset) + ")"),
        line_(line),
        offset_(offset) {}

  std::uint64_t line() const { return line_; }
  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t line_;
  std::uint64_t offset_;
};

}  // namespace polypa
