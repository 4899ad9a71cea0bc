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

#ifndef IRECO_STATUS_MACROS_H_
#define IRECO_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define IRECO_RETURN_IF_ERROR(expr)            \
  do {                                         \
    absl::Status _ireco_status = (expr);       \
    if (!_ireco_status.ok()) {                 \
      return _ireco_status;                    \
    }                                          \
  } while (false)

#define IRECO_CONCAT_INNER_(a, b) a##b
#define IRECO_CONCAT_(a, b) IRECO_CONCAT_INNER_(a, b)

#define IRECO_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, rexpr) \
  auto tmp = (rexpr);                                 \
  if (!tmp.ok()) {                                    \
    return std::move(tmp).status();                   \
  }                                                   \
  lhs = std::move(tmp).value()

#define IRECO_ASSIGN_OR_RETURN(lhs, rexpr) \
  IRECO_ASSIGN_OR_RETURN_IMPL_(            \
      IRECO_CONCAT_(_ireco_statusor_, __LINE__), lhs, rexpr)

#endif  // IRECO_STATUS_MACROS_H_
