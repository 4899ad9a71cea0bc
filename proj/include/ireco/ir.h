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

#ifndef IRECO_IR_H_
#define IRECO_IR_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ireco {

// Widest bit vector the interpreter models.
inline constexpr int64_t kMaxBitWidth = 64;

// Ids with this prefix are reserved for patch-application placeholders.
inline constexpr std::string_view kReservedIdPrefix = "__dummy_";

struct DataType {
  int64_t width = 1;

  // Canonical form: "bits[<width>]".
  std::string ToString() const;
  static std::optional<DataType> FromString(std::string_view text);

  friend bool operator==(const DataType&, const DataType&) = default;
};

enum class OpKind {
  kParam,
  kLiteral,
  kAdd,
  kSub,
  kUMul,
  kAnd,
  kOr,
  kXor,
  kNot,
  kNeg,
  kShll,
  kShrl,
  kConcat,
  kBitSlice,
  kZeroExt,
  kSignExt,
  kEq,
  kNe,
  kULt,
  kUGt,
  kSel,
  kRetIdentity,
};

std::string_view OpKindName(OpKind op);
std::optional<OpKind> OpKindFromName(std::string_view name);
const std::vector<OpKind>& AllOpKinds();

// Operand order never affects the result of a commutative op.
bool IsCommutative(OpKind op);

// Minimum and maximum operand counts; max is nullopt for variadic ops.
struct Arity {
  int min = 0;
  std::optional<int> max;
};
Arity ArityOf(OpKind op);

// Keys of the op-specific attributes each op must carry.
const std::vector<std::string>& RequiredAttrs(OpKind op);

struct Node {
  std::string id;
  OpKind op = OpKind::kParam;
  DataType type;
  std::vector<std::string> operands;
  // Op-specific attributes, e.g. "value" for literals or "start"/"width" for
  // bit_slice. Values are canonical decimal strings.
  std::map<std::string, std::string> attrs;

  std::optional<int64_t> IntAttr(std::string_view key) const;
};

struct Function {
  std::string name;
  std::vector<std::string> params;
  std::string return_node;
  std::vector<Node> nodes;

  const Node* FindNode(std::string_view id) const;
  Node* FindNode(std::string_view id);
  DataType ReturnType() const;
  std::vector<DataType> ParamTypes() const;
};

struct Package {
  std::string name;
  std::vector<Function> functions;
  std::string top;

  const Function* TopFunction() const;
  Function* TopFunction();
};

// Structural equality: identical functions, params, return designation and
// node sets keyed by id. Declaration order is ignored and operands of
// commutative ops compare as multisets.
bool StructurallyEqual(const Function& a, const Function& b);
bool StructurallyEqual(const Package& a, const Package& b);

}  // namespace ireco

#endif  // IRECO_IR_H_
