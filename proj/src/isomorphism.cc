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

#include "ireco/isomorphism.h"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

namespace ireco {
namespace {

using EdgeBag = std::vector<EdgeAttr>;

class Matcher {
 public:
  Matcher(const IrGraph& a, const IrGraph& b) : a_(a), b_(b) {}

  std::optional<std::vector<int>> Run() {
    const int n = a_.node_count();
    if (n != b_.node_count() || a_.edge_count() != b_.edge_count()) {
      return std::nullopt;
    }
    Refine();
    for (int i = 0; i < n; ++i) {
      if (std::count(color_a_.begin(), color_a_.end(), color_a_[i]) !=
          std::count(color_b_.begin(), color_b_.end(), color_a_[i])) {
        return std::nullopt;
      }
    }
    // Most constrained (rarest color) first, then neighbors early.
    order_.resize(n);
    for (int i = 0; i < n; ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) {
      return std::count(color_a_.begin(), color_a_.end(), color_a_[x]) <
             std::count(color_a_.begin(), color_a_.end(), color_a_[y]);
    });
    map_.assign(n, -1);
    used_.assign(n, false);
    if (!Search(0)) return std::nullopt;
    return map_;
  }

 private:
  // Weisfeiler-Lehman style color refinement over both graphs jointly so
  // colors are comparable.
  void Refine() {
    std::map<NodeAttr, int> base;
    for (const GraphNode& n : a_.nodes()) base.emplace(n.attr, 0);
    for (const GraphNode& n : b_.nodes()) base.emplace(n.attr, 0);
    int next = 0;
    for (auto& [attr, id] : base) id = next++;
    color_a_.clear();
    color_b_.clear();
    for (const GraphNode& n : a_.nodes()) color_a_.push_back(base.at(n.attr));
    for (const GraphNode& n : b_.nodes()) color_b_.push_back(base.at(n.attr));
    for (int round = 0; round < 4; ++round) {
      using Signature =
          std::tuple<int, std::vector<std::pair<int, EdgeAttr>>,
                     std::vector<std::pair<int, EdgeAttr>>>;
      auto signature = [](const IrGraph& g, const std::vector<int>& color,
                          int v) {
        std::vector<std::pair<int, EdgeAttr>> in;
        std::vector<std::pair<int, EdgeAttr>> out;
        for (int e : g.InEdges(v)) {
          in.emplace_back(color[g.edges()[e].source], g.edges()[e].attr);
        }
        for (int e : g.OutEdges(v)) {
          out.emplace_back(color[g.edges()[e].sink], g.edges()[e].attr);
        }
        std::sort(in.begin(), in.end());
        std::sort(out.begin(), out.end());
        return Signature{color[v], std::move(in), std::move(out)};
      };
      std::map<Signature, int> ids;
      std::vector<Signature> sa;
      std::vector<Signature> sb;
      for (int v = 0; v < a_.node_count(); ++v) {
        sa.push_back(signature(a_, color_a_, v));
        ids.emplace(sa.back(), 0);
      }
      for (int v = 0; v < b_.node_count(); ++v) {
        sb.push_back(signature(b_, color_b_, v));
        ids.emplace(sb.back(), 0);
      }
      int k = 0;
      for (auto& [sig, id] : ids) id = k++;
      for (int v = 0; v < a_.node_count(); ++v) color_a_[v] = ids.at(sa[v]);
      for (int v = 0; v < b_.node_count(); ++v) color_b_[v] = ids.at(sb[v]);
    }
  }

  static EdgeBag Between(const IrGraph& g, int from, int to) {
    EdgeBag bag;
    for (int e : g.OutEdges(from)) {
      if (g.edges()[e].sink == to) bag.push_back(g.edges()[e].attr);
    }
    std::sort(bag.begin(), bag.end());
    return bag;
  }

  bool Consistent(int u, int v) const {
    for (int w = 0; w < a_.node_count(); ++w) {
      const int x = map_[w];
      if (x < 0) continue;
      if (Between(a_, u, w) != Between(b_, v, x)) return false;
      if (Between(a_, w, u) != Between(b_, x, v)) return false;
    }
    return true;
  }

  bool Search(size_t depth) {
    if (depth == order_.size()) return true;
    const int u = order_[depth];
    for (int v = 0; v < b_.node_count(); ++v) {
      if (used_[v] || color_b_[v] != color_a_[u]) continue;
      if (Between(a_, u, u) != Between(b_, v, v) || !Consistent(u, v)) continue;
      map_[u] = v;
      used_[v] = true;
      if (Search(depth + 1)) return true;
      map_[u] = -1;
      used_[v] = false;
    }
    return false;
  }

  const IrGraph& a_;
  const IrGraph& b_;
  std::vector<int> color_a_;
  std::vector<int> color_b_;
  std::vector<int> order_;
  std::vector<int> map_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<std::vector<int>> FindIsomorphism(const IrGraph& a,
                                                const IrGraph& b) {
  return Matcher(a, b).Run();
}

}  // namespace ireco
