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

#ifndef IRECO_IR_PARSER_H_
#define IRECO_IR_PARSER_H_

#include <string_view>

#include "absl/status/statusor.h"
#include "ireco/ir.h"

namespace ireco {

// Parses the textual IR dialect (see docs/ir-grammar.md) and validates the
// result. Errors carry ErrorKind::kSyntaxError ("line:col: message"),
// kDanglingOperand, or kValidationError (first violated rule).
absl::StatusOr<Package> ParseIr(std::string_view text);

// Same grammar, no validation. Useful for constructing broken packages.
absl::StatusOr<Package> ParseIrUnvalidated(std::string_view text);

}  // namespace ireco

#endif  // IRECO_IR_PARSER_H_
