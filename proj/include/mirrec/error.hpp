// mirrec - multiplex-relationship hypergraph reviewer recommendation
// Copyright 2026 The mirrec Authors
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
#include <string_view>
#include <utility>

namespace mirrec {

// Values are stable: they double as C API status codes and CLI exit codes.
enum class ErrorCode : int {
  Ok = 0,
  IoFailure = 1,
  MalformedLine = 2,
  SchemaViolation = 3,
  DuplicatePr = 4,
  EmptyLog = 5,
  PreconditionViolation = 6,
  DegenerateWindow = 7,
  NoConvergence = 8,
  MuOutOfRange = 9,
  InsufficientSpan = 10,
  UnknownPr = 11,
  SingularMatrix = 12,
  TimeHygieneViolation = 13,
  InvalidConfig = 14,
  Internal = 15,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Line-oriented parse failures keep the 1-based line number around so the CLI
// can point at the offending record.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line_no, std::string field,
             const std::string& message)
      : Error(code, message), line_no_(line_no), field_(std::move(field)) {}

  std::size_t line_no() const noexcept { return line_no_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_no_;
  std::string field_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const char* message) {
  if (!condition) fail(code, message);
}

}  // namespace mirrec
