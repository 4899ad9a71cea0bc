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

#ifndef IRECO_IR_VALIDATE_H_
#define IRECO_IR_VALIDATE_H_

#include <string>
#include <vector>

#include "ireco/ir.h"

namespace ireco {

// Rule names reported in Violation::rule.
namespace rules {
inline constexpr char kDuplicateId[] = "DuplicateId";
inline constexpr char kReservedId[] = "ReservedId";
inline constexpr char kParamMismatch[] = "ParamMismatch";
inline constexpr char kDanglingOperand[] = "DanglingOperand";
inline constexpr char kArity[] = "Arity";
inline constexpr char kWidthRange[] = "WidthRange";
inline constexpr char kWidthMismatch[] = "WidthMismatch";
inline constexpr char kMissingAttribute[] = "MissingAttribute";
inline constexpr char kAttributeRange[] = "AttributeRange";
inline constexpr char kCycle[] = "Cycle";
inline constexpr char kMissingReturn[] = "MissingReturn";
inline constexpr char kDeadNode[] = "DeadNode";
inline constexpr char kMissingTop[] = "MissingTop";
}  // namespace rules

struct Violation {
  std::string node_id;
  std::string rule;
  std::string message;

  std::string ToString() const;
};

std::vector<Violation> Validate(const Function& f);
std::vector<Violation> Validate(const Package& pkg);

// Node ids in dependency order (operands before users), ties broken by id.
// Returns an empty vector if the operand graph has a cycle or a dangling
// reference.
std::vector<std::string> TopologicalOrder(const Function& f);

}  // namespace ireco

#endif  // IRECO_IR_VALIDATE_H_
