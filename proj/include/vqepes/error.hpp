// Copyright 2026 The vqepes Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace vqepes {

/// Base class for every domain failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(std::string detail, std::size_t line, std::string source = {})
      : Error(compose(detail, line, source)), detail_(std::move(detail)), line_(line) {}

  const std::string& detail() const noexcept { return detail_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string compose(const std::string& detail, std::size_t line, const std::string& source) {
    std::string where = source;
    if (line > 0) where += (where.empty() ? "line " : ":") + std::to_string(line);
    return where.empty() ? detail : where + ": " + detail;
  }

  std::string detail_;
  std::size_t line_;
};

/// Invalid configuration or invocation (unknown method, bad flag value).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A size guard (qubit count, dense matrix dimension) was exceeded.
class SizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace vqepes
