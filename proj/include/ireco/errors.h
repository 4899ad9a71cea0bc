// Copyright 2026 The ireco Authors
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

#ifndef IRECO_ERRORS_H_
#define IRECO_ERRORS_H_

#include <optional>
#include <string>
#include <string_view>

#include "absl/status/status.h"

namespace ireco {

// Domain error taxonomy. Each kind is carried as a payload on an
// absl::Status so callers (and the CLI exit-code mapping) can branch on it.
enum class ErrorKind {
  kSyntaxError,
  kValidationError,
  kDanglingOperand,
  kEvalError,
  kUnknownEdge,
  kSizeLimitExceeded,
  kInconsistentPath,
  kSchemaError,
  kHashMismatch,
  kInvariantViolation,
  kUnresolvedDummy,
  kUnknownTarget,
  kCycleDetected,
  kInfeasible,
  kPeriodTooSmall,
  kInconsistentPatch,
  kSignatureMismatch,
  kIoError,
  kConfigError,
};

std::string_view ErrorKindName(ErrorKind kind);

absl::Status MakeError(ErrorKind kind, std::string_view message);

// Returns the kind attached by MakeError, or nullopt for foreign statuses.
std::optional<ErrorKind> GetErrorKind(const absl::Status& status);

inline bool HasErrorKind(const absl::Status& status, ErrorKind kind) {
  return GetErrorKind(status) == kind;
}

}  // namespace ireco

#endif  // IRECO_ERRORS_H_
