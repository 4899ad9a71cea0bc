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

#include "ireco/errors.h"

#include <array>
#include <string>

#include "absl/strings/cord.h"

namespace ireco {
namespace {

constexpr std::string_view kKindPayloadUrl = "ireco.dev/error-kind";

struct KindInfo {
  ErrorKind kind;
  std::string_view name;
  absl::StatusCode code;
};

constexpr std::array kKinds = {
    KindInfo{ErrorKind::kSyntaxError, "SyntaxError",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kValidationError, "ValidationError",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kDanglingOperand, "DanglingOperand",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kEvalError, "EvalError", absl::StatusCode::kInternal},
    KindInfo{ErrorKind::kUnknownEdge, "UnknownEdge",
             absl::StatusCode::kNotFound},
    KindInfo{ErrorKind::kSizeLimitExceeded, "SizeLimitExceeded",
             absl::StatusCode::kResourceExhausted},
    KindInfo{ErrorKind::kInconsistentPath, "InconsistentPath",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kSchemaError, "SchemaError",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kHashMismatch, "HashMismatch",
             absl::StatusCode::kFailedPrecondition},
    KindInfo{ErrorKind::kInvariantViolation, "InvariantViolation",
             absl::StatusCode::kFailedPrecondition},
    KindInfo{ErrorKind::kUnresolvedDummy, "UnresolvedDummy",
             absl::StatusCode::kInternal},
    KindInfo{ErrorKind::kUnknownTarget, "UnknownTarget",
             absl::StatusCode::kNotFound},
    KindInfo{ErrorKind::kCycleDetected, "CycleDetected",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kInfeasible, "Infeasible",
             absl::StatusCode::kFailedPrecondition},
    KindInfo{ErrorKind::kPeriodTooSmall, "PeriodTooSmall",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kInconsistentPatch, "InconsistentPatch",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kSignatureMismatch, "SignatureMismatch",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kIoError, "IoError", absl::StatusCode::kUnavailable},
    KindInfo{ErrorKind::kConfigError, "ConfigError",
             absl::StatusCode::kInvalidArgument},
};

const KindInfo& Info(ErrorKind kind) {
  for (const KindInfo& info : kKinds) {
    if (info.kind == kind) return info;
  }
  return kKinds.front();
}

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) { return Info(kind).name; }

absl::Status MakeError(ErrorKind kind, std::string_view message) {
  const KindInfo& info = Info(kind);
  std::string text(info.name);
  text += ": ";
  text += message;
  absl::Status status(info.code, text);
  status.SetPayload(std::string(kKindPayloadUrl),
                    absl::Cord(std::string(info.name)));
  return status;
}

std::optional<ErrorKind> GetErrorKind(const absl::Status& status) {
  auto payload = status.GetPayload(std::string(kKindPayloadUrl));
  if (!payload.has_value()) return std::nullopt;
  std::string name(*payload);
  for (const KindInfo& info : kKinds) {
    if (info.name == name) return info.kind;
  }
  return std::nullopt;
}

}  // namespace ireco
