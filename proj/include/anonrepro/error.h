//
// Copyright 2026 The AnonRepro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef ANONREPRO_ERROR_H_
#define ANONREPRO_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace anonrepro {

enum class ErrorCode {
  kParse,
  kValidation,
  kUnsupportedTechnique,
  kMissingHierarchy,
  kDegenerateInterval,
  kEvaluation,
  kInfeasibleEnumeration,
  kInvalidBaseline,
  kUsage,
  kIo,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kValidation: return "validation error";
    case ErrorCode::kUnsupportedTechnique: return "unsupported technique";
    case ErrorCode::kMissingHierarchy: return "missing hierarchy";
    case ErrorCode::kDegenerateInterval: return "degenerate interval";
    case ErrorCode::kEvaluation: return "evaluation error";
    case ErrorCode::kInfeasibleEnumeration: return "infeasible enumeration";
    case ErrorCode::kInvalidBaseline: return "invalid baseline";
    case ErrorCode::kUsage: return "usage error";
    case ErrorCode::kIo: return "i/o error";
  }
  return "error";
}

// All library failures surface as this exception; the code drives CLI exit
// status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const { return code_; }
  // The message without the code prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace anonrepro

#endif  // ANONREPRO_ERROR_H_
