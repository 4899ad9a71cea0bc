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

#include "ireco/ir_printer.h"

#include <algorithm>
#include <vector>

#include "ireco/ir_validate.h"

namespace ireco {
namespace {

std::string JoinIds(const std::vector<std::string>& ids, size_t begin,
                    size_t end) {
  std::string out;
  for (size_t i = begin; i < end; ++i) {
    if (i > begin) out += ", ";
    out += ids[i];
  }
  return out;
}

}  // namespace

std::string PrintNode(const Node& node, bool is_return) {
  std::string out = is_return ? "ret " : "";
  out += node.id + ": " + node.type.ToString() + " = " +
         std::string(OpKindName(node.op)) + "(";
  std::vector<std::string> operands = node.operands;
  if (IsCommutative(node.op)) std::sort(operands.begin(), operands.end());
  switch (node.op) {
    case OpKind::kLiteral:
      out += "value=" + node.attrs.at("value");
      break;
    case OpKind::kBitSlice:
      out += JoinIds(operands, 0, operands.size()) +
             ", start=" + node.attrs.at("start") +
             ", width=" + node.attrs.at("width");
      break;
    case OpKind::kZeroExt:
    case OpKind::kSignExt:
      out += JoinIds(operands, 0, operands.size()) +
             ", new_bit_count=" + node.attrs.at("new_bit_count");
      break;
    case OpKind::kSel: {
      const bool has_default = node.attrs.at("has_default") == "true";
      const size_t cases_end = operands.size() - (has_default ? 1 : 0);
      out += operands[0] + ", cases=[" + JoinIds(operands, 1, cases_end) + "]";
      if (has_default) out += ", default=" + operands.back();
      break;
    }
    default:
      out += JoinIds(operands, 0, operands.size());
      break;
  }
  out += ")";
  return out;
}

std::string PrintFunction(const Function& f, bool mark_top) {
  std::string out = mark_top ? "top fn " : "fn ";
  out += f.name + "(";
  for (size_t i = 0; i < f.params.size(); ++i) {
    if (i > 0) out += ", ";
    const Node* param = f.FindNode(f.params[i]);
    out += f.params[i] + ": " + (param ? param->type.ToString() : "bits[0]");
  }
  out += ") -> " + f.ReturnType().ToString() + " {\n";
  for (const std::string& id : TopologicalOrder(f)) {
    const Node* node = f.FindNode(id);
    if (node->op == OpKind::kParam) continue;
    out += "  " + PrintNode(*node, id == f.return_node) + "\n";
  }
  out += "}\n";
  return out;
}

std::string PrintIr(const Package& pkg) {
  std::string out;
  if (!pkg.name.empty()) out += "package " + pkg.name + "\n\n";
  const bool mark_top = pkg.functions.size() > 1;
  for (size_t i = 0; i < pkg.functions.size(); ++i) {
    if (i > 0) out += "\n";
    const Function& f = pkg.functions[i];
    out += PrintFunction(f, mark_top && f.name == pkg.top);
  }
  return out;
}

}  // namespace ireco
