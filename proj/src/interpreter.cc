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

#include "ireco/interpreter.h"

#include <cctype>
#include <charconv>
#include <unordered_map>

#include "ireco/errors.h"
#include "ireco/ir_validate.h"

namespace ireco {
namespace {

// Shared op semantics. operands/widths are parallel arrays.
uint64_t EvalOp(OpKind op, int64_t width, uint64_t imm, bool has_default,
                std::span<const uint64_t> operands,
                std::span<const int64_t> widths) {
  const uint64_t mask = WidthMask(width);
  switch (op) {
    case OpKind::kParam:
    case OpKind::kLiteral:
      return imm & mask;
    case OpKind::kAdd:
      return (operands[0] + operands[1]) & mask;
    case OpKind::kSub:
      return (operands[0] - operands[1]) & mask;
    case OpKind::kUMul:
      return (operands[0] * operands[1]) & mask;
    case OpKind::kAnd: {
      uint64_t v = mask;
      for (uint64_t x : operands) v &= x;
      return v;
    }
    case OpKind::kOr: {
      uint64_t v = 0;
      for (uint64_t x : operands) v |= x;
      return v & mask;
    }
    case OpKind::kXor: {
      uint64_t v = 0;
      for (uint64_t x : operands) v ^= x;
      return v & mask;
    }
    case OpKind::kNot:
      return ~operands[0] & mask;
    case OpKind::kNeg:
      return (~operands[0] + 1) & mask;
    case OpKind::kShll:
      return operands[1] >= static_cast<uint64_t>(width)
                 ? 0
                 : (operands[0] << operands[1]) & mask;
    case OpKind::kShrl:
      return operands[1] >= static_cast<uint64_t>(width)
                 ? 0
                 : (operands[0] >> operands[1]) & mask;
    case OpKind::kConcat: {
      // Operand 0 is the most significant.
      uint64_t v = 0;
      for (size_t i = 0; i < operands.size(); ++i) {
        v = (widths[i] >= 64 ? 0 : v << widths[i]) | operands[i];
      }
      return v & mask;
    }
    case OpKind::kBitSlice:
      return imm >= 64 ? 0 : (operands[0] >> imm) & mask;
    case OpKind::kZeroExt:
    case OpKind::kRetIdentity:
      return operands[0] & mask;
    case OpKind::kSignExt: {
      const int64_t from = widths[0];
      uint64_t v = operands[0];
      if (from < 64 && ((v >> (from - 1)) & 1)) v |= ~WidthMask(from);
      return v & mask;
    }
    case OpKind::kEq:
      return operands[0] == operands[1] ? 1 : 0;
    case OpKind::kNe:
      return operands[0] != operands[1] ? 1 : 0;
    case OpKind::kULt:
      return operands[0] < operands[1] ? 1 : 0;
    case OpKind::kUGt:
      return operands[0] > operands[1] ? 1 : 0;
    case OpKind::kSel: {
      const uint64_t cases = imm;
      const uint64_t selector = operands[0];
      if (selector < cases) return operands[1 + selector] & mask;
      return has_default ? operands.back() & mask : 0;
    }
  }
  return 0;
}

uint64_t ImmediateFor(const Node& node) {
  switch (node.op) {
    case OpKind::kLiteral:
      return static_cast<uint64_t>(node.IntAttr("value").value_or(0));
    case OpKind::kBitSlice:
      return static_cast<uint64_t>(node.IntAttr("start").value_or(0));
    case OpKind::kSel: {
      const bool has_default = node.attrs.at("has_default") == "true";
      return node.operands.size() - 1 - (has_default ? 1 : 0);
    }
    default:
      return 0;
  }
}

bool HasDefault(const Node& node) {
  auto it = node.attrs.find("has_default");
  return it != node.attrs.end() && it->second == "true";
}

}  // namespace

absl::StatusOr<BitsValue> Interpret(const Function& f,
                                    std::span<const BitsValue> inputs) {
  if (inputs.size() != f.params.size()) {
    return MakeError(ErrorKind::kEvalError,
                     "expected " + std::to_string(f.params.size()) +
                         " inputs, got " + std::to_string(inputs.size()));
  }
  std::vector<std::string> order = TopologicalOrder(f);
  if (order.size() != f.nodes.size()) {
    return MakeError(ErrorKind::kEvalError, "function is not a DAG");
  }
  std::unordered_map<std::string, BitsValue> values;
  for (size_t i = 0; i < f.params.size(); ++i) {
    const Node* param = f.FindNode(f.params[i]);
    if (param == nullptr || inputs[i].width != param->type.width ||
        (inputs[i].value & ~WidthMask(inputs[i].width)) != 0) {
      return MakeError(ErrorKind::kEvalError,
                       "input " + std::to_string(i) + " does not fit param " +
                           f.params[i]);
    }
    values[param->id] = inputs[i];
  }
  std::vector<uint64_t> operand_values;
  std::vector<int64_t> operand_widths;
  for (const std::string& id : order) {
    const Node& node = *f.FindNode(id);
    if (node.op == OpKind::kParam) continue;
    operand_values.clear();
    operand_widths.clear();
    for (const std::string& operand : node.operands) {
      const BitsValue& v = values.at(operand);
      operand_values.push_back(v.value);
      operand_widths.push_back(v.width);
    }
    uint64_t result = EvalOp(node.op, node.type.width, ImmediateFor(node),
                             HasDefault(node), operand_values, operand_widths);
    values[id] = BitsValue{node.type.width, result};
  }
  auto ret = values.find(f.return_node);
  if (ret == values.end()) {
    return MakeError(ErrorKind::kEvalError, "return node was not evaluated");
  }
  return ret->second;
}

absl::StatusOr<CompiledFunction> CompiledFunction::Compile(const Function& f) {
  std::vector<std::string> order = TopologicalOrder(f);
  if (order.size() != f.nodes.size() || f.FindNode(f.return_node) == nullptr) {
    return MakeError(ErrorKind::kEvalError, "cannot compile malformed function");
  }
  CompiledFunction out;
  std::unordered_map<std::string, int32_t> slot;
  std::unordered_map<std::string, int32_t> param_index;
  for (size_t i = 0; i < f.params.size(); ++i) {
    param_index[f.params[i]] = static_cast<int32_t>(i);
    out.param_widths_.push_back(f.FindNode(f.params[i])->type.width);
  }
  for (const std::string& id : order) {
    const Node& node = *f.FindNode(id);
    Instruction inst;
    inst.op = node.op;
    inst.width = node.type.width;
    inst.imm = ImmediateFor(node);
    inst.has_default = HasDefault(node);
    if (node.op == OpKind::kParam) inst.param_index = param_index.at(id);
    for (const std::string& operand : node.operands) {
      inst.operands.push_back(slot.at(operand));
      inst.operand_widths.push_back(f.FindNode(operand)->type.width);
    }
    slot[id] = static_cast<int32_t>(out.instructions_.size());
    out.instructions_.push_back(std::move(inst));
  }
  out.return_slot_ = slot.at(f.return_node);
  out.return_width_ = f.FindNode(f.return_node)->type.width;
  return out;
}

uint64_t CompiledFunction::Evaluate(std::span<const uint64_t> inputs,
                                    std::span<uint64_t> scratch) const {
  uint64_t operand_values[64];
  std::vector<uint64_t> spill;
  for (size_t i = 0; i < instructions_.size(); ++i) {
    const Instruction& inst = instructions_[i];
    if (inst.op == OpKind::kParam) {
      scratch[i] = inputs[inst.param_index] & WidthMask(inst.width);
      continue;
    }
    uint64_t* values = operand_values;
    if (inst.operands.size() > 64) {
      spill.resize(inst.operands.size());
      values = spill.data();
    }
    for (size_t k = 0; k < inst.operands.size(); ++k) {
      values[k] = scratch[inst.operands[k]];
    }
    scratch[i] = EvalOp(inst.op, inst.width, inst.imm, inst.has_default,
                        std::span<const uint64_t>(values, inst.operands.size()),
                        inst.operand_widths);
  }
  return scratch[return_slot_];
}

absl::StatusOr<std::vector<std::vector<BitsValue>>> ParseInputVectors(
    std::string_view text, const Function& f) {
  std::vector<DataType> types = f.ParamTypes();
  std::vector<std::vector<BitsValue>> out;
  int line_number = 0;
  while (!text.empty()) {
    size_t end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view() : text.substr(end + 1);
    ++line_number;
    if (size_t comment = line.find("//"); comment != std::string_view::npos) {
      line = line.substr(0, comment);
    }
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.remove_suffix(1);
    }
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) {
      line.remove_prefix(1);
    }
    if (line.empty()) continue;
    std::vector<BitsValue> vec;
    while (true) {
      size_t comma = line.find(',');
      std::string_view field = line.substr(0, comma);
      while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
      while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
      uint64_t value = 0;
      auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), value);
      if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        return MakeError(ErrorKind::kSyntaxError,
                         "line " + std::to_string(line_number) +
                             ": malformed value '" + std::string(field) + "'");
      }
      const size_t index = vec.size();
      if (index >= types.size() ||
          (value & ~WidthMask(types[index].width)) != 0) {
        return MakeError(ErrorKind::kSyntaxError,
                         "line " + std::to_string(line_number) +
                             ": value does not fit the signature");
      }
      vec.push_back(BitsValue{types[index].width, value});
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (vec.size() != types.size()) {
      return MakeError(ErrorKind::kSyntaxError,
                       "line " + std::to_string(line_number) + ": expected " +
                           std::to_string(types.size()) + " values");
    }
    out.push_back(std::move(vec));
  }
  return out;
}

}  // namespace ireco
