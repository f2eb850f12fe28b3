// Copyright 2026 The vastream Authors. All Rights Reserved.
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

#ifndef VASTREAM_ERROR_HPP_
#define VASTREAM_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vastream {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument or a type invariant was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A text or binary input could not be parsed. `line()` is 1-based, 0 when the
// error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// The planner found no configuration sequence that keeps every lag within
// the bound.
class Infeasible : public Error {
 public:
  using Error::Error;
};

}  // namespace vastream

#endif  // VASTREAM_ERROR_HPP_
