// Copyright 2026 The syneval Authors. All Rights Reserved.
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

#ifndef SYNEVAL_ERROR_H_
#define SYNEVAL_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace syneval {

enum class ErrorCode {
  kConfig,
  kShape,
  kNumericDivergence,
  kDegenerateInput,
  kParameter,
  kValidation,
  kTransform,
  kFormat,
  kParse,
  kAlignment,
  kIo,
  kVersion,
  kInput,
};

// All failures raised by the library carry a machine-readable code so that
// callers (notably the CLI) can map them to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig: return "configuration error";
    case ErrorCode::kShape: return "shape error";
    case ErrorCode::kNumericDivergence: return "numeric divergence";
    case ErrorCode::kDegenerateInput: return "degenerate input";
    case ErrorCode::kParameter: return "parameter error";
    case ErrorCode::kValidation: return "validation error";
    case ErrorCode::kTransform: return "transform error";
    case ErrorCode::kFormat: return "format error";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kAlignment: return "alignment error";
    case ErrorCode::kIo: return "I/O error";
    case ErrorCode::kVersion: return "version error";
    case ErrorCode::kInput: return "input error";
  }
  return "error";
}

}  // namespace syneval

#endif  // SYNEVAL_ERROR_H_
