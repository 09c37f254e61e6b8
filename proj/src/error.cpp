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

#include "mirrec/error.hpp"

namespace mirrec {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::DuplicatePr: return "DuplicatePr";
    case ErrorCode::EmptyLog: return "EmptyLog";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::DegenerateWindow: return "DegenerateWindow";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::MuOutOfRange: return "MuOutOfRange";
    case ErrorCode::InsufficientSpan: return "InsufficientSpan";
    case ErrorCode::UnknownPr: return "UnknownPr";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::TimeHygieneViolation: return "TimeHygieneViolation";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace mirrec
