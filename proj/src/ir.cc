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

#include "ireco/ir.h"

#include <algorithm>
#include <array>
#include <charconv>

namespace ireco {
namespace {

struct OpInfo {
  OpKind op;
  std::string_view name;
  bool commutative;
  Arity arity;
};

const std::array<OpInfo, 22>& OpTable() {
  static const std::array<OpInfo, 22> table = {{
      {OpKind::kParam, "param", false, {0, 0}},
      {OpKind::kLiteral, "literal", false, {0, 0}},
      {OpKind::kAdd, "add", true, {2, 2}},
      {OpKind::kSub, "sub", false, {2, 2}},
      {OpKind::kUMul, "umul", true, {2, 2}},
      {OpKind::kAnd, "and", true, {2, std::nullopt}},
      {OpKind::kOr, "or", true, {2, std::nullopt}},
      {OpKind::kXor, "xor", true, {2, std::nullopt}},
      {OpKind::kNot, "not", false, {1, 1}},
      {OpKind::kNeg, "neg", false, {1, 1}},
      {OpKind::kShll, "shll", false, {2, 2}},
      {OpKind::kShrl, "shrl", false, {2, 2}},
      {OpKind::kConcat, "concat", false, {1, std::nullopt}},
      {OpKind::kBitSlice, "bit_slice", false, {1, 1}},
      {OpKind::kZeroExt, "zero_ext", false, {1, 1}},
      {OpKind::kSignExt, "sign_ext", false, {1, 1}},
      {OpKind::kEq, "eq", true, {2, 2}},
      {OpKind::kNe, "ne", true, {2, 2}},
      {OpKind::kULt, "ult", false, {2, 2}},
      {OpKind::kUGt, "ugt", false, {2, 2}},
      // Selector plus at least one case; an optional default comes last.
      {OpKind::kSel, "sel", false, {2, std::nullopt}},
      {OpKind::kRetIdentity, "ret_identity", false, {1, 1}},
  }};
  return table;
}

const OpInfo& InfoFor(OpKind op) {
  return OpTable()[static_cast<size_t>(op)];
}

std::vector<std::string> SortedOperandsIfCommutative(const Node& node) {
  std::vector<std::string> operands = node.operands;
  if (IsCommutative(node.op)) std::sort(operands.begin(), operands.end());
  return operands;
}

}  // namespace

std::string DataType::ToString() const {
  return "bits[" + std::to_string(width) + "]";
}

std::optional<DataType> DataType::FromString(std::string_view text) {
  constexpr std::string_view kPrefix = "bits[";
  if (text.size() <= kPrefix.size() + 1 || !text.starts_with(kPrefix) ||
      text.back() != ']') {
    return std::nullopt;
  }
  std::string_view digits =
      text.substr(kPrefix.size(), text.size() - kPrefix.size() - 1);
  int64_t width = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), width);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || width < 1) {
    return std::nullopt;
  }
  return DataType{width};
}

std::string_view OpKindName(OpKind op) { return InfoFor(op).name; }

std::optional<OpKind> OpKindFromName(std::string_view name) {
  for (const OpInfo& info : OpTable()) {
    if (info.name == name) return info.op;
  }
  return std::nullopt;
}

const std::vector<OpKind>& AllOpKinds() {
  static const std::vector<OpKind> kinds = [] {
    std::vector<OpKind> out;
    for (const OpInfo& info : OpTable()) out.push_back(info.op);
    return out;
  }();
  return kinds;
}

bool IsCommutative(OpKind op) { return InfoFor(op).commutative; }

Arity ArityOf(OpKind op) { return InfoFor(op).arity; }

const std::vector<std::string>& RequiredAttrs(OpKind op) {
  static const std::vector<std::string> kNone;
  static const std::vector<std::string> kLiteral = {"value"};
  static const std::vector<std::string> kSlice = {"start", "width"};
  static const std::vector<std::string> kExt = {"new_bit_count"};
  static const std::vector<std::string> kSel = {"has_default"};
  switch (op) {
    case OpKind::kLiteral:
      return kLiteral;
    case OpKind::kBitSlice:
      return kSlice;
    case OpKind::kZeroExt:
    case OpKind::kSignExt:
      return kExt;
    case OpKind::kSel:
      return kSel;
    default:
      return kNone;
  }
}

std::optional<int64_t> Node::IntAttr(std::string_view key) const {
  auto it = attrs.find(std::string(key));
  if (it == attrs.end()) return std::nullopt;
  const std::string& text = it->second;
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return static_cast<int64_t>(value);
}

const Node* Function::FindNode(std::string_view id) const {
  for (const Node& node : nodes) {
    if (node.id == id) return &node;
  }
  return nullptr;
}

Node* Function::FindNode(std::string_view id) {
  for (Node& node : nodes) {
    if (node.id == id) return &node;
  }
  return nullptr;
}

DataType Function::ReturnType() const {
  const Node* ret = FindNode(return_node);
  return ret == nullptr ? DataType{} : ret->type;
}

std::vector<DataType> Function::ParamTypes() const {
  std::vector<DataType> types;
  for (const std::string& param : params) {
    const Node* node = FindNode(param);
    types.push_back(node == nullptr ? DataType{} : node->type);
  }
  return types;
}

const Function* Package::TopFunction() const {
  for (const Function& f : functions) {
    if (f.name == top) return &f;
  }
  return nullptr;
}

Function* Package::TopFunction() {
  for (Function& f : functions) {
    if (f.name == top) return &f;
  }
  return nullptr;
}

bool StructurallyEqual(const Function& a, const Function& b) {
  if (a.name != b.name || a.params != b.params ||
      a.return_node != b.return_node || a.nodes.size() != b.nodes.size()) {
    return false;
  }
  for (const Node& node : a.nodes) {
    const Node* other = b.FindNode(node.id);
    if (other == nullptr || other->op != node.op || other->type != node.type ||
        other->attrs != node.attrs ||
        SortedOperandsIfCommutative(*other) !=
            SortedOperandsIfCommutative(node)) {
      return false;
    }
  }
  return true;
}

bool StructurallyEqual(const Package& a, const Package& b) {
  if (a.name != b.name || a.top != b.top ||
      a.functions.size() != b.functions.size()) {
    return false;
  }
  for (size_t i = 0; i < a.functions.size(); ++i) {
    if (!StructurallyEqual(a.functions[i], b.functions[i])) return false;
  }
  return true;
}

}  // namespace ireco
