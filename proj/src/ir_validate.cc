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

#include "ireco/ir_validate.h"

#include <map>
#include <queue>
#include <set>
#include <string_view>
#include <unordered_map>

namespace ireco {
namespace {

class FunctionChecker {
 public:
  explicit FunctionChecker(const Function& f) : f_(f) {
    for (const Node& node : f.nodes) {
      if (!by_id_.emplace(node.id, &node).second) {
        Add(node.id, rules::kDuplicateId, "id declared more than once");
      }
    }
  }

  std::vector<Violation> Run() {
    CheckParams();
    bool operands_resolve = true;
    for (const Node& node : f_.nodes) {
      if (std::string_view(node.id).starts_with(kReservedIdPrefix)) {
        Add(node.id, rules::kReservedId, "id uses the reserved dummy prefix");
      }
      if (node.type.width < 1 || node.type.width > kMaxBitWidth) {
        Add(node.id, rules::kWidthRange,
            "width " + std::to_string(node.type.width) + " outside [1, " +
                std::to_string(kMaxBitWidth) + "]");
        continue;
      }
      bool resolved = true;
      for (const std::string& operand : node.operands) {
        if (!by_id_.contains(operand)) {
          Add(node.id, rules::kDanglingOperand,
              "operand '" + operand + "' does not exist");
          resolved = false;
        }
      }
      operands_resolve &= resolved;
      if (resolved) CheckNodeTyping(node);
    }
    if (operands_resolve && by_id_.size() == f_.nodes.size() &&
        TopologicalOrder(f_).size() != f_.nodes.size()) {
      Add("", rules::kCycle, "operand references form a cycle");
    }
    CheckReturnAndLiveness();
    return std::move(violations_);
  }

 private:
  void Add(const std::string& id, const char* rule, std::string message) {
    violations_.push_back(Violation{id, rule, std::move(message)});
  }

  const Node& Operand(const Node& node, size_t i) const {
    return *by_id_.at(node.operands[i]);
  }

  int64_t OperandWidth(const Node& node, size_t i) const {
    return Operand(node, i).type.width;
  }

  void CheckParams() {
    std::set<std::string> listed;
    for (const std::string& param : f_.params) {
      auto it = by_id_.find(param);
      if (it == by_id_.end() || it->second->op != OpKind::kParam) {
        Add(param, rules::kParamMismatch, "listed param is not a param node");
      }
      if (!listed.insert(param).second) {
        Add(param, rules::kParamMismatch, "param listed twice");
      }
    }
    for (const Node& node : f_.nodes) {
      if (node.op == OpKind::kParam && !listed.contains(node.id)) {
        Add(node.id, rules::kParamMismatch, "param node missing from signature");
      }
    }
  }

  void CheckNodeTyping(const Node& node) {
    const int arity = static_cast<int>(node.operands.size());
    Arity rule = ArityOf(node.op);
    if (arity < rule.min || (rule.max.has_value() && arity > *rule.max)) {
      Add(node.id, rules::kArity,
          std::string(OpKindName(node.op)) + " does not accept " +
              std::to_string(arity) + " operand(s)");
      return;
    }
    for (const std::string& key : RequiredAttrs(node.op)) {
      if (!node.attrs.contains(key)) {
        Add(node.id, rules::kMissingAttribute, "missing attribute '" + key + "'");
        return;
      }
    }
    const int64_t width = node.type.width;
    auto require_width = [&](bool ok, const std::string& what) {
      if (!ok) Add(node.id, rules::kWidthMismatch, what);
    };
    switch (node.op) {
      case OpKind::kParam:
        break;
      case OpKind::kLiteral: {
        std::optional<int64_t> value = node.IntAttr("value");
        if (!value.has_value()) {
          Add(node.id, rules::kAttributeRange, "literal value is not a number");
        } else if (width < 64 && static_cast<uint64_t>(*value) >> width != 0) {
          Add(node.id, rules::kAttributeRange, "literal value exceeds width");
        }
        break;
      }
      case OpKind::kAdd:
      case OpKind::kSub:
      case OpKind::kUMul:
      case OpKind::kAnd:
      case OpKind::kOr:
      case OpKind::kXor:
      case OpKind::kNot:
      case OpKind::kNeg:
      case OpKind::kRetIdentity:
        for (size_t i = 0; i < node.operands.size(); ++i) {
          require_width(OperandWidth(node, i) == width,
                        "operand " + std::to_string(i) +
                            " width differs from result width");
        }
        break;
      case OpKind::kShll:
      case OpKind::kShrl:
        require_width(OperandWidth(node, 0) == width,
                      "shifted operand width differs from result width");
        break;
      case OpKind::kConcat: {
        int64_t sum = 0;
        for (size_t i = 0; i < node.operands.size(); ++i) {
          sum += OperandWidth(node, i);
        }
        require_width(sum == width, "concat width is not the operand sum");
        break;
      }
      case OpKind::kBitSlice: {
        std::optional<int64_t> start = node.IntAttr("start");
        std::optional<int64_t> slice = node.IntAttr("width");
        if (!start.has_value() || !slice.has_value() || *slice != width ||
            *start + *slice > OperandWidth(node, 0)) {
          Add(node.id, rules::kAttributeRange,
              "bit_slice range does not fit operand and result");
        }
        break;
      }
      case OpKind::kZeroExt:
      case OpKind::kSignExt: {
        std::optional<int64_t> bits = node.IntAttr("new_bit_count");
        if (!bits.has_value() || *bits != width) {
          Add(node.id, rules::kAttributeRange,
              "new_bit_count must equal the result width");
        }
        require_width(OperandWidth(node, 0) <= width,
                      "extension narrows its operand");
        break;
      }
      case OpKind::kEq:
      case OpKind::kNe:
      case OpKind::kULt:
      case OpKind::kUGt:
        require_width(width == 1, "comparison result must be bits[1]");
        require_width(OperandWidth(node, 0) == OperandWidth(node, 1),
                      "comparison operands differ in width");
        break;
      case OpKind::kSel:
        CheckSel(node);
        break;
    }
  }

  void CheckSel(const Node& node) {
    const std::string& flag = node.attrs.at("has_default");
    if (flag != "true" && flag != "false") {
      Add(node.id, rules::kAttributeRange, "has_default must be true or false");
      return;
    }
    const bool has_default = flag == "true";
    const int64_t cases =
        static_cast<int64_t>(node.operands.size()) - 1 - (has_default ? 1 : 0);
    if (cases < 1) {
      Add(node.id, rules::kArity, "sel needs at least one case");
      return;
    }
    for (size_t i = 1; i < node.operands.size(); ++i) {
      if (OperandWidth(node, i) != node.type.width) {
        Add(node.id, rules::kWidthMismatch,
            "sel case/default width differs from result width");
        return;
      }
    }
    const int64_t selector_width = OperandWidth(node, 0);
    if (selector_width >= 62) return;
    const int64_t reachable = int64_t{1} << selector_width;
    if (cases > reachable) {
      Add(node.id, rules::kAttributeRange,
          "more cases than selector values");
    } else if (has_default == (cases == reachable)) {
      Add(node.id, rules::kAttributeRange,
          has_default ? "default is unreachable" : "sel needs a default");
    }
  }

  void CheckReturnAndLiveness() {
    auto ret = by_id_.find(f_.return_node);
    if (ret == by_id_.end()) {
      Add(f_.return_node, rules::kMissingReturn, "return node does not exist");
      return;
    }
    if (ret->second->op == OpKind::kParam) {
      Add(f_.return_node, rules::kMissingReturn, "return node is a param");
    }
    std::set<std::string> used;
    for (const Node& node : f_.nodes) {
      used.insert(node.operands.begin(), node.operands.end());
    }
    for (const Node& node : f_.nodes) {
      if (node.op != OpKind::kParam && node.id != f_.return_node &&
          !used.contains(node.id)) {
        Add(node.id, rules::kDeadNode, "node has no users and is not returned");
      }
    }
  }

  const Function& f_;
  std::unordered_map<std::string, const Node*> by_id_;
  std::vector<Violation> violations_;
};

}  // namespace

std::string Violation::ToString() const {
  return rule + "(" + node_id + "): " + message;
}

std::vector<Violation> Validate(const Function& f) {
  return FunctionChecker(f).Run();
}

std::vector<Violation> Validate(const Package& pkg) {
  std::vector<Violation> out;
  if (pkg.TopFunction() == nullptr) {
    out.push_back({pkg.top, rules::kMissingTop, "top function not found"});
  }
  std::set<std::string> names;
  for (const Function& f : pkg.functions) {
    if (!names.insert(f.name).second) {
      out.push_back({f.name, rules::kDuplicateId, "function declared twice"});
    }
    std::vector<Violation> inner = Validate(f);
    out.insert(out.end(), inner.begin(), inner.end());
  }
  return out;
}

std::vector<std::string> TopologicalOrder(const Function& f) {
  std::map<std::string, int> pending;
  std::map<std::string, std::vector<std::string>> users;
  for (const Node& node : f.nodes) {
    pending[node.id] = static_cast<int>(node.operands.size());
  }
  for (const Node& node : f.nodes) {
    for (const std::string& operand : node.operands) {
      if (!pending.contains(operand)) return {};
      users[operand].push_back(node.id);
    }
  }
  std::priority_queue<std::string, std::vector<std::string>,
                      std::greater<std::string>>
      ready;
  for (const auto& [id, count] : pending) {
    if (count == 0) ready.push(id);
  }
  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string id = ready.top();
    ready.pop();
    order.push_back(id);
    for (const std::string& user : users[id]) {
      if (--pending[user] == 0) ready.push(user);
    }
  }
  if (order.size() != pending.size()) return {};
  return order;
}

}  // namespace ireco
