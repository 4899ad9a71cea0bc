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

#include "ireco/corpus.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>

#include "ireco/interpreter.h"
#include "ireco/ir_validate.h"

namespace ireco {
namespace {

constexpr int64_t kMaxNodeWidth = 16;

const std::vector<OpKind> kBinaryOps = {OpKind::kAdd, OpKind::kSub, OpKind::kUMul,
                                        OpKind::kAnd, OpKind::kOr,  OpKind::kXor};
const std::vector<OpKind> kNaryOps = {OpKind::kAnd, OpKind::kOr, OpKind::kXor};
const std::vector<OpKind> kCompareOps = {OpKind::kEq, OpKind::kNe, OpKind::kULt,
                                         OpKind::kUGt};
const std::vector<std::vector<OpKind>> kSwapClasses = {
    kBinaryOps, kCompareOps, {OpKind::kShll, OpKind::kShrl},
    {OpKind::kNot, OpKind::kNeg}, {OpKind::kZeroExt, OpKind::kSignExt}};

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  // Uniform in [lo, hi].
  int64_t Range(int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(engine_);
  }
  bool Chance(int percent) { return Range(0, 99) < percent; }
  template <typename T>
  const T& Pick(const std::vector<T>& items) {
    return items[Range(0, static_cast<int64_t>(items.size()) - 1)];
  }
  uint64_t Bits(int64_t width) { return engine_() & WidthMask(width); }

 private:
  std::mt19937_64 engine_;
};

int64_t WidthOf(const Function& f, const std::string& id) {
  return f.FindNode(id)->type.width;
}

// Points every use of from (and the return designation) at to, except uses
// by the nodes in keep.
void Redirect(Function& f, const std::string& from, const std::string& to,
              const std::set<std::string>& keep) {
  for (Node& node : f.nodes) {
    if (keep.count(node.id)) continue;
    for (std::string& operand : node.operands) {
      if (operand == from) operand = to;
    }
  }
  if (f.return_node == from) f.return_node = to;
}

class Builder {
 public:
  Builder(Function& f, Rng& rng, std::string prefix)
      : f_(f), rng_(rng), prefix_(std::move(prefix)) {}

  std::string FreshId() {
    for (;;) {
      std::string id = prefix_ + std::to_string(next_++);
      if (f_.FindNode(id) == nullptr) return id;
    }
  }

  std::string Add(OpKind op, int64_t width, std::vector<std::string> operands,
                  std::map<std::string, std::string> attrs = {}) {
    Node node;
    node.id = FreshId();
    node.op = op;
    node.type.width = width;
    node.operands = std::move(operands);
    node.attrs = std::move(attrs);
    f_.nodes.push_back(node);
    return node.id;
  }

  std::string Literal(int64_t width) {
    return Add(OpKind::kLiteral, width, {},
               {{"value", std::to_string(rng_.Bits(width))}});
  }

  // A node of the given width, preferring recent nodes so graphs get deep.
  std::optional<std::string> WithWidth(int64_t width) {
    std::vector<std::string> matches;
    for (const Node& node : f_.nodes) {
      if (node.type.width == width) matches.push_back(node.id);
    }
    if (matches.empty()) return std::nullopt;
    if (matches.size() > 2 && rng_.Chance(50)) {
      return matches[matches.size() - 1 - rng_.Range(0, 1)];
    }
    return rng_.Pick(matches);
  }

  std::string AnyNode() {
    if (f_.nodes.size() > 2 && rng_.Chance(50)) {
      return f_.nodes[f_.nodes.size() - 1 - rng_.Range(0, 1)].id;
    }
    return rng_.Pick(f_.nodes).id;
  }

  // Adds one random op over existing nodes; returns its id, or nullopt when
  // the drawn op had no suitable operands.
  std::optional<std::string> RandomOp() {
    const std::string a = AnyNode();
    const int64_t w = WidthOf(f_, a);
    switch (rng_.Range(0, 9)) {
      case 0:
      case 1:
      case 2:
        return Add(rng_.Pick(kBinaryOps), w, {a, *WithWidth(w)});
      case 3:
        return Add(rng_.Pick(kNaryOps), w, {a, *WithWidth(w), *WithWidth(w)});
      case 4:
        return Add(rng_.Chance(50) ? OpKind::kNot : OpKind::kNeg, w, {a});
      case 5:
        return Add(rng_.Chance(50) ? OpKind::kShll : OpKind::kShrl, w,
                   {a, AnyNode()});
      case 6:
        return Add(rng_.Pick(kCompareOps), 1, {a, *WithWidth(w)});
      case 7: {
        if (rng_.Chance(50)) {
          const std::string b = AnyNode();
          if (w + WidthOf(f_, b) > kMaxNodeWidth) return std::nullopt;
          return Add(OpKind::kConcat, w + WidthOf(f_, b), {a, b});
        }
        const int64_t width = rng_.Range(1, w);
        const int64_t start = rng_.Range(0, w - width);
        return Add(OpKind::kBitSlice, width, {a},
                   {{"start", std::to_string(start)},
                    {"width", std::to_string(width)}});
      }
      case 8: {
        if (w >= kMaxNodeWidth) return std::nullopt;
        const int64_t to = rng_.Range(w + 1, std::min<int64_t>(w + 4, kMaxNodeWidth));
        return Add(rng_.Chance(50) ? OpKind::kZeroExt : OpKind::kSignExt, to, {a},
                   {{"new_bit_count", std::to_string(to)}});
      }
      default: {
        std::optional<std::string> selector = WithWidth(1);
        if (!selector.has_value()) return std::nullopt;
        return Add(OpKind::kSel, w, {*selector, a, *WithWidth(w)},
                   {{"has_default", "false"}});
      }
    }
  }

 private:
  Function& f_;
  Rng& rng_;
  std::string prefix_;
  int next_ = 0;
};

bool IsValid(const Function& f) { return Validate(f).empty(); }

bool MutateLiteral(Function& f, Rng& rng) {
  std::vector<Node*> literals;
  for (Node& node : f.nodes) {
    if (node.op == OpKind::kLiteral) literals.push_back(&node);
  }
  if (literals.empty()) return false;
  Node* node = rng.Pick(literals);
  const int64_t w = node->type.width;
  const uint64_t old_value = std::stoull(node->attrs["value"]);
  const uint64_t value = (old_value + 1 + rng.Bits(w) % WidthMask(w)) & WidthMask(w);
  if (value == old_value) return false;
  node->attrs["value"] = std::to_string(value);
  return true;
}

bool MutateOpSwap(Function& f, Rng& rng) {
  std::vector<std::pair<Node*, const std::vector<OpKind>*>> candidates;
  for (Node& node : f.nodes) {
    for (const std::vector<OpKind>& cls : kSwapClasses) {
      if (std::find(cls.begin(), cls.end(), node.op) == cls.end()) continue;
      // Only and/or/xor take more than two operands.
      if (node.operands.size() > 2 && &cls == &kSwapClasses[0]) {
        candidates.emplace_back(&node, &kNaryOps);
      } else {
        candidates.emplace_back(&node, &cls);
      }
      break;
    }
  }
  if (candidates.empty()) return false;
  auto [node, cls] = rng.Pick(candidates);
  std::vector<OpKind> others;
  for (OpKind op : *cls) {
    if (op != node->op) others.push_back(op);
  }
  node->op = rng.Pick(others);
  return true;
}

bool MutateInsert(Function& f, Rng& rng) {
  std::vector<std::string> targets;
  for (const Node& node : f.nodes) {
    if (node.op != OpKind::kParam) targets.push_back(node.id);
  }
  if (targets.empty()) return false;
  const std::string x = rng.Pick(targets);
  const int64_t w = WidthOf(f, x);
  Builder b(f, rng, "m");
  std::string top = b.Add(rng.Pick(kBinaryOps), w, {x, b.Literal(w)});
  std::set<std::string> fresh{top};
  if (rng.Chance(40)) {
    top = b.Add(rng.Chance(50) ? OpKind::kNot : OpKind::kNeg, w, {top});
    fresh.insert(top);
  }
  Redirect(f, x, top, fresh);
  if (rng.Chance(50)) {
    // Hand x's name to the new node so the revised ids collide with a
    // surviving original.
    const std::string renamed = b.FreshId();
    for (Node& node : f.nodes) {
      for (std::string& operand : node.operands) {
        if (operand == x) operand = renamed;
        else if (operand == top) operand = x;
      }
      if (node.id == x) node.id = renamed;
      else if (node.id == top) node.id = x;
    }
    if (f.return_node == top) f.return_node = x;
  }
  return true;
}

bool MutateDelete(Function& f, Rng& rng) {
  std::vector<std::pair<std::string, std::string>> bypasses;
  for (const Node& node : f.nodes) {
    if (node.op == OpKind::kParam) continue;
    for (const std::string& operand : node.operands) {
      const Node* def = f.FindNode(operand);
      if (def->type == node.type &&
          !(node.id == f.return_node && def->op == OpKind::kParam)) {
        bypasses.emplace_back(node.id, operand);
        break;
      }
    }
  }
  if (bypasses.empty()) return false;
  auto [node, operand] = rng.Pick(bypasses);
  Redirect(f, node, operand, {});
  EliminateDeadNodes(f);
  return true;
}

bool MutateWidth(Function& f, Rng& rng, int max_param_bits) {
  if (f.params.empty()) return false;
  const std::string p = rng.Pick(f.params);
  int64_t total = 0;
  for (const std::string& id : f.params) total += WidthOf(f, id);
  const int64_t w = WidthOf(f, p);
  const int64_t room = max_param_bits - (total - w);
  std::vector<int64_t> widths;
  for (int64_t v = std::max<int64_t>(1, w - 3); v <= std::min(room, w + 3); ++v) {
    if (v != w) widths.push_back(v);
  }
  if (widths.empty()) return false;
  const int64_t to = rng.Pick(widths);
  f.FindNode(p)->type.width = to;
  Builder b(f, rng, "m");
  const std::string adapter =
      to < w ? b.Add(OpKind::kZeroExt, w, {p}, {{"new_bit_count", std::to_string(w)}})
             : b.Add(OpKind::kBitSlice, w, {p},
                     {{"start", "0"}, {"width", std::to_string(w)}});
  Redirect(f, p, adapter, {adapter});
  return true;
}

bool MutateCommutativeSwap(Function& f, Rng& rng) {
  std::vector<Node*> candidates;
  for (Node& node : f.nodes) {
    if (IsCommutative(node.op) && node.operands.size() >= 2 &&
        node.operands.front() != node.operands.back()) {
      candidates.push_back(&node);
    }
  }
  if (candidates.empty()) return false;
  Node* node = rng.Pick(candidates);
  std::reverse(node->operands.begin(), node->operands.end());
  return true;
}

bool MutateRename(Function& f, Rng& rng) {
  std::vector<std::string> candidates;
  for (const Node& node : f.nodes) {
    if (node.op != OpKind::kParam) candidates.push_back(node.id);
  }
  if (candidates.size() < 2) return false;
  const std::string a = rng.Pick(candidates);
  const std::string b = rng.Pick(candidates);
  if (a == b) return false;
  // Swap the two names.
  auto swap_name = [&](std::string& id) {
    if (id == a) id = b;
    else if (id == b) id = a;
  };
  for (Node& node : f.nodes) {
    swap_name(node.id);
    for (std::string& operand : node.operands) swap_name(operand);
  }
  swap_name(f.return_node);
  return true;
}

bool Mutate(Function& f, Mutation m, Rng& rng, const CorpusOptions& options) {
  switch (m) {
    case Mutation::kLiteralEdit:
      return MutateLiteral(f, rng);
    case Mutation::kOpSwap:
      return MutateOpSwap(f, rng);
    case Mutation::kSubgraphInsert:
      return MutateInsert(f, rng);
    case Mutation::kSubgraphDelete:
      return MutateDelete(f, rng);
    case Mutation::kWidthChange:
      return MutateWidth(f, rng, options.max_param_bits);
    case Mutation::kCommutativeSwap:
      return MutateCommutativeSwap(f, rng);
    case Mutation::kRename:
      return MutateRename(f, rng);
  }
  return false;
}

}  // namespace

std::string_view MutationName(Mutation m) {
  switch (m) {
    case Mutation::kLiteralEdit:
      return "literal_edit";
    case Mutation::kOpSwap:
      return "op_swap";
    case Mutation::kSubgraphInsert:
      return "subgraph_insert";
    case Mutation::kSubgraphDelete:
      return "subgraph_delete";
    case Mutation::kWidthChange:
      return "width_change";
    case Mutation::kCommutativeSwap:
      return "commutative_swap";
    case Mutation::kRename:
      return "rename";
  }
  return "unknown";
}

void EliminateDeadNodes(Function& f) {
  std::set<std::string> live{f.return_node};
  std::vector<std::string> stack{f.return_node};
  while (!stack.empty()) {
    const Node* node = f.FindNode(stack.back());
    stack.pop_back();
    if (node == nullptr) continue;
    for (const std::string& operand : node->operands) {
      if (live.insert(operand).second) stack.push_back(operand);
    }
  }
  std::erase_if(f.nodes, [&](const Node& node) {
    return node.op != OpKind::kParam && !live.count(node.id);
  });
}

Function RandomFunction(uint64_t seed, const CorpusOptions& options) {
  Rng rng(seed);
  for (;;) {
    Function f;
    f.name = "f";
    const int64_t params = rng.Range(1, options.max_params);
    int64_t budget = options.max_param_bits;
    for (int64_t i = 0; i < params; ++i) {
      const int64_t left = params - i - 1;
      const int64_t w = rng.Range(1, std::min<int64_t>(8, budget - left));
      budget -= w;
      Node p;
      p.id = "p" + std::to_string(i);
      p.op = OpKind::kParam;
      p.type.width = w;
      f.nodes.push_back(p);
      f.params.push_back(p.id);
    }
    Builder b(f, rng, "n");
    if (rng.Chance(60)) b.Literal(rng.Pick(f.nodes).type.width);
    const int64_t ops = rng.Range(options.min_ops, options.max_ops);
    std::string last;
    for (int64_t made = 0; made < ops;) {
      std::optional<std::string> id = b.RandomOp();
      if (id.has_value()) {
        last = *id;
        ++made;
      }
    }
    f.return_node = last;
    EliminateDeadNodes(f);
    int64_t op_nodes = 0;
    for (const Node& node : f.nodes) op_nodes += node.op != OpKind::kParam;
    if (op_nodes >= 2 && IsValid(f)) return f;
  }
}

CorpusPair GenerateCorpusPair(uint64_t seed, const CorpusOptions& options) {
  CorpusPair pair;
  Function original = RandomFunction(seed, options);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
  Function revised = original;
  const int64_t count = rng.Range(options.min_mutations, options.max_mutations);
  const std::vector<Mutation> all = {
      Mutation::kLiteralEdit,    Mutation::kOpSwap,          Mutation::kSubgraphInsert,
      Mutation::kSubgraphDelete, Mutation::kWidthChange,     Mutation::kCommutativeSwap,
      Mutation::kRename};
  for (int attempts = 0; static_cast<int64_t>(pair.mutations.size()) < count &&
                         attempts < 100;
       ++attempts) {
    Function trial = revised;
    const Mutation m = rng.Pick(all);
    if (!Mutate(trial, m, rng, options)) continue;
    EliminateDeadNodes(trial);
    if (!IsValid(trial)) continue;
    revised = std::move(trial);
    pair.mutations.push_back(m);
  }
  pair.original.name = "corpus";
  pair.original.functions.push_back(std::move(original));
  pair.original.top = "f";
  pair.revised.name = "corpus";
  pair.revised.functions.push_back(std::move(revised));
  pair.revised.top = "f";
  return pair;
}

}  // namespace ireco
