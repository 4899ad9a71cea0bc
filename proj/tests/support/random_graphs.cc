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

#include "random_graphs.h"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace ireco::testing {
namespace {

struct NodeSpec {
  OpKind op;
  int width;
  // Source node per operand slot; -1 leaves the slot unconnected.
  std::vector<int> operands;
};

using Spec = std::vector<NodeSpec>;

int ArityFor(OpKind op) {
  switch (op) {
    case OpKind::kLiteral:
      return 0;
    case OpKind::kNot:
      return 1;
    default:
      return 2;
  }
}

IrGraph Build(const Spec& spec, int max_edges) {
  IrGraph g;
  for (size_t i = 0; i < spec.size(); ++i) {
    NodeAttr attr;
    attr.op = std::string(OpKindName(spec[i].op));
    attr.dtype_str = DataType{spec[i].width}.ToString();
    // Declared from the arity so rewiring never changes the label.
    attr.operand_dtype_str.assign(spec[i].operands.size(), attr.dtype_str);
    if (spec[i].op == OpKind::kLiteral) attr.unique_attrs["value"] = "1";
    g.AddNode("v" + std::to_string(i), std::move(attr));
  }
  for (size_t i = 0; i < spec.size(); ++i) {
    for (size_t slot = 0; slot < spec[i].operands.size(); ++slot) {
      const int source = spec[i].operands[slot];
      if (source < 0 || g.edge_count() >= max_edges) continue;
      EdgeAttr attr;
      attr.source_data_type = g.nodes()[source].attr.dtype_str;
      attr.sink_data_type = g.nodes()[i].attr.dtype_str;
      if (!IsCommutative(spec[i].op)) attr.index = static_cast<int>(slot);
      g.AddEdge(source, static_cast<int>(i), static_cast<int>(slot), std::move(attr));
    }
  }
  return g;
}

class Generator {
 public:
  Generator(uint64_t seed, const RandomGraphOptions& options)
      : rng_(seed), options_(options) {
    // A small per-pair palette keeps label collisions, and with them the
    // number of feasible substitutions, high.
    static const OpKind kOps[] = {OpKind::kAdd, OpKind::kSub, OpKind::kUMul,
                                  OpKind::kAnd, OpKind::kNot, OpKind::kLiteral};
    const int k = Range(1, 3);
    for (int i = 0; i < k; ++i) ops_.push_back(kOps[Range(0, 5)]);
    widths_ = Range(0, 4) == 0 ? std::vector<int>{4, 8} : std::vector<int>{8};
  }

  int Range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  template <typename T>
  const T& Pick(const std::vector<T>& v) {
    return v[Range(0, static_cast<int>(v.size()) - 1)];
  }

  NodeSpec RandomNode() {
    NodeSpec n{Pick(ops_), Pick(widths_), {}};
    n.operands.assign(ArityFor(n.op), -1);
    return n;
  }

  void Wire(Spec& spec, size_t i) {
    for (int& source : spec[i].operands) source = RandomSource(spec, i);
  }

  int RandomSource(const Spec& spec, size_t sink) {
    const int n = static_cast<int>(spec.size());
    if (n < 2 || Range(0, 6) == 0) return -1;
    int s = Range(0, n - 2);
    if (s >= static_cast<int>(sink)) ++s;
    return s;
  }

  Spec RandomSpec() {
    Spec spec;
    const int n = Range(std::min(3, options_.max_nodes), options_.max_nodes);
    for (int i = 0; i < n; ++i) spec.push_back(RandomNode());
    for (size_t i = 0; i < spec.size(); ++i) Wire(spec, i);
    return spec;
  }

  Spec Edit(Spec spec) {
    const int edits = Range(1, 3);
    for (int e = 0; e < edits && !spec.empty(); ++e) {
      const size_t i = static_cast<size_t>(Range(0, static_cast<int>(spec.size()) - 1));
      switch (Range(0, 4)) {
        case 0:
          spec[i] = RandomNode();
          Wire(spec, i);
          break;
        case 1:
          if (static_cast<int>(spec.size()) < options_.max_nodes) {
            spec.push_back(RandomNode());
            Wire(spec, spec.size() - 1);
          }
          break;
        case 2: {
          spec.erase(spec.begin() + static_cast<long>(i));
          for (NodeSpec& n : spec) {
            for (int& s : n.operands) {
              if (s == static_cast<int>(i)) s = -1;
              if (s > static_cast<int>(i)) --s;
            }
          }
          break;
        }
        case 3:
          for (int& s : spec[i].operands) {
            if (Range(0, 1) == 0) s = RandomSource(spec, i);
          }
          break;
        default:
          for (int& s : spec[i].operands) s = -1;
          break;
      }
    }
    return spec;
  }

 private:
  std::mt19937_64 rng_;
  RandomGraphOptions options_;
  std::vector<OpKind> ops_;
  std::vector<int> widths_;
};

}  // namespace

std::pair<IrGraph, IrGraph> RandomGraphPair(uint64_t seed,
                                            const RandomGraphOptions& options) {
  Generator gen(seed, options);
  Spec a = gen.RandomSpec();
  Spec b = gen.Range(0, 1) == 0 ? gen.Edit(a) : gen.RandomSpec();
  return {Build(a, options.max_edges), Build(b, options.max_edges)};
}

}  // namespace ireco::testing
