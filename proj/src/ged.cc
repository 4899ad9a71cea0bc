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

#include "ireco/ged.h"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <tuple>

#include "ireco/errors.h"
#include "ireco/lsap.h"

namespace ireco {
namespace {

// Interned node and edge labels shared by both graphs, so attribute equality
// becomes integer equality inside the search.
struct Labels {
  std::vector<int> node1;
  std::vector<int> node2;
  std::vector<int> edge1;
  std::vector<int> edge2;
  int node_label_count = 0;
  int edge_label_count = 0;

  Labels(const IrGraph& g1, const IrGraph& g2) {
    std::map<NodeAttr, int> nodes;
    for (const IrGraph* g : {&g1, &g2}) {
      for (const GraphNode& n : g->nodes()) nodes.emplace(n.attr, 0);
    }
    for (auto& [attr, id] : nodes) id = node_label_count++;
    for (const GraphNode& n : g1.nodes()) node1.push_back(nodes.at(n.attr));
    for (const GraphNode& n : g2.nodes()) node2.push_back(nodes.at(n.attr));
    std::map<EdgeAttr, int> edges;
    for (const IrGraph* g : {&g1, &g2}) {
      for (const Edge& e : g->edges()) edges.emplace(e.attr, 0);
    }
    for (auto& [attr, id] : edges) id = edge_label_count++;
    for (const Edge& e : g1.edges()) edge1.push_back(edges.at(e.attr));
    for (const Edge& e : g2.edges()) edge2.push_back(edges.at(e.attr));
  }
};

// (other endpoint in g2, direction, edge label)
using EdgeKeyInt = std::tuple<int, int, int>;

int64_t SymmetricDifference(std::vector<EdgeKeyInt>& a,
                            std::vector<EdgeKeyInt>& b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  int64_t common = 0;
  size_t i = 0;
  size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return static_cast<int64_t>(a.size() + b.size()) - 2 * common;
}

class BranchAndBound {
 public:
  BranchAndBound(const IrGraph& g1, const IrGraph& g2, const GedConfig& config,
                 const PathCallback& on_improved)
      : g1_(g1),
        g2_(g2),
        config_(config),
        on_improved_(on_improved),
        labels_(g1, g2) {}

  GedResult Run() {
    const int n1 = g1_.node_count();
    const int n2 = g2_.node_count();
    assign_.assign(n1, PartialMapping::kUndecided);
    inverse_.assign(n2, -1);
    r1_.assign(labels_.node_label_count, 0);
    r2_.assign(labels_.node_label_count, 0);
    o1_.assign(labels_.edge_label_count, 0);
    o2_.assign(labels_.edge_label_count, 0);
    targets_by_label_.assign(labels_.node_label_count, {});
    for (int u = 0; u < n1; ++u) ++r1_[labels_.node1[u]];
    for (int v = 0; v < n2; ++v) {
      ++r2_[labels_.node2[v]];
      targets_by_label_[labels_.node2[v]].push_back(v);
    }
    for (auto& targets : targets_by_label_) {
      std::sort(targets.begin(), targets.end(), [&](int a, int b) {
        return g2_.nodes()[a].id < g2_.nodes()[b].id;
      });
    }
    for (int l : labels_.edge1) ++o1_[l];
    for (int l : labels_.edge2) ++o2_[l];
    for (int l = 0; l < labels_.node_label_count; ++l) {
      node_lb_ += std::abs(r1_[l] - r2_[l]);
    }
    for (int l = 0; l < labels_.edge_label_count; ++l) {
      edge_lb_ += std::abs(o1_[l] - o2_[l]);
    }
    order_ = SourceOrder();
    deadline_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    config_.time_limit);
    Dfs(0);

    GedResult result;
    result.optimal = !timed_out_;
    result.paths_emitted = emitted_;
    result.expansions = expansions_;
    if (best_mapping_.has_value()) {
      result.best = *EditPathFromMapping(g1_, g2_, *best_mapping_);
    } else {
      // Nothing completed before the deadline: delete everything, insert
      // everything.
      result.best = *EditPathFromMapping(g1_, g2_, std::vector<int>(n1, -1));
    }
    return result;
  }

 private:
  // Sources sorted by the cost of their slot in an optimal assignment over
  // doubled node costs plus the local (incident edge label) difference, so
  // confidently matched nodes are branched on first.
  std::vector<int> SourceOrder() const {
    const int n1 = g1_.node_count();
    const int n2 = g2_.node_count();
    std::vector<int> order(n1);
    for (int u = 0; u < n1; ++u) order[u] = u;
    if (n1 == 0) return order;
    const int n = n1 + n2;
    constexpr int64_t kForbidden = int64_t{1} << 40;
    auto incident = [](const IrGraph& g, const std::vector<int>& edge_labels,
                       int v) {
      std::vector<EdgeKeyInt> keys;
      for (int e : g.OutEdges(v)) keys.emplace_back(0, 0, edge_labels[e]);
      for (int e : g.InEdges(v)) keys.emplace_back(0, 1, edge_labels[e]);
      return keys;
    };
    std::vector<std::vector<EdgeKeyInt>> local1(n1);
    std::vector<std::vector<EdgeKeyInt>> local2(n2);
    for (int u = 0; u < n1; ++u) local1[u] = incident(g1_, labels_.edge1, u);
    for (int v = 0; v < n2; ++v) local2[v] = incident(g2_, labels_.edge2, v);
    CostMatrix cost(n, std::vector<int64_t>(n, 0));
    for (int u = 0; u < n1; ++u) {
      for (int v = 0; v < n2; ++v) {
        if (labels_.node1[u] != labels_.node2[v]) {
          cost[u][v] = kForbidden;
        } else {
          std::vector<EdgeKeyInt> a = local1[u];
          std::vector<EdgeKeyInt> b = local2[v];
          cost[u][v] = SymmetricDifference(a, b);
        }
      }
      for (int j = 0; j < n1; ++j) {
        cost[u][n2 + j] = j == u ? 2 * kDeleteCost +
                                       static_cast<int64_t>(local1[u].size())
                                 : kForbidden;
      }
    }
    for (int i = 0; i < n2; ++i) {
      for (int v = 0; v < n2; ++v) {
        cost[n1 + i][v] = i == v ? 2 * kInsertCost +
                                       static_cast<int64_t>(local2[v].size())
                                 : kForbidden;
      }
    }
    Assignment assignment = SolveAssignment(cost);
    std::vector<int64_t> slot_cost(n1);
    for (int u = 0; u < n1; ++u) slot_cost[u] = cost[u][assignment.row_to_col[u]];
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return slot_cost[a] < slot_cost[b];
    });
    return order;
  }

  void AdjustNodeCount(std::vector<int>& counts, int label, int delta) {
    node_lb_ -= std::abs(r1_[label] - r2_[label]);
    counts[label] += delta;
    node_lb_ += std::abs(r1_[label] - r2_[label]);
  }

  void AdjustEdgeCount(std::vector<int>& counts, int label, int delta) {
    edge_lb_ -= std::abs(o1_[label] - o2_[label]);
    counts[label] += delta;
    edge_lb_ += std::abs(o1_[label] - o2_[label]);
  }

  int64_t MapEdgeDelta(int u, int v) {
    scratch_a_.clear();
    scratch_b_.clear();
    for (int e : g1_.OutEdges(u)) {
      const int w = g1_.edges()[e].sink;
      if (assign_[w] >= 0) scratch_a_.emplace_back(assign_[w], 0, labels_.edge1[e]);
    }
    for (int e : g1_.InEdges(u)) {
      const int w = g1_.edges()[e].source;
      if (assign_[w] >= 0) scratch_a_.emplace_back(assign_[w], 1, labels_.edge1[e]);
    }
    for (int f : g2_.OutEdges(v)) {
      const int x = g2_.edges()[f].sink;
      if (inverse_[x] >= 0) scratch_b_.emplace_back(x, 0, labels_.edge2[f]);
    }
    for (int f : g2_.InEdges(v)) {
      const int x = g2_.edges()[f].source;
      if (inverse_[x] >= 0) scratch_b_.emplace_back(x, 1, labels_.edge2[f]);
    }
    return SymmetricDifference(scratch_a_, scratch_b_);
  }

  // Closes/reopens the edges decided by mapping u -> v. sign is -1 on apply
  // and +1 on undo; assign_/inverse_ must not yet contain the pair.
  void TouchMappedEdges(int u, int v, int sign) {
    for (int e : g1_.OutEdges(u)) {
      if (assign_[g1_.edges()[e].sink] >= 0) AdjustEdgeCount(o1_, labels_.edge1[e], sign);
    }
    for (int e : g1_.InEdges(u)) {
      if (assign_[g1_.edges()[e].source] >= 0) AdjustEdgeCount(o1_, labels_.edge1[e], sign);
    }
    for (int f : g2_.OutEdges(v)) {
      if (inverse_[g2_.edges()[f].sink] >= 0) AdjustEdgeCount(o2_, labels_.edge2[f], sign);
    }
    for (int f : g2_.InEdges(v)) {
      if (inverse_[g2_.edges()[f].source] >= 0) AdjustEdgeCount(o2_, labels_.edge2[f], sign);
    }
  }

  void ApplyMap(int u, int v) {
    ++expansions_;
    committed_ += MapEdgeDelta(u, v);
    TouchMappedEdges(u, v, -1);
    AdjustNodeCount(r1_, labels_.node1[u], -1);
    AdjustNodeCount(r2_, labels_.node2[v], -1);
    assign_[u] = v;
    inverse_[v] = u;
  }

  void UndoMap(int u, int v, int64_t committed_before) {
    assign_[u] = PartialMapping::kUndecided;
    inverse_[v] = -1;
    TouchMappedEdges(u, v, +1);
    AdjustNodeCount(r1_, labels_.node1[u], +1);
    AdjustNodeCount(r2_, labels_.node2[v], +1);
    committed_ = committed_before;
  }

  // Edges to already-deleted neighbors were charged when those were deleted.
  void TouchDeletedEdges(int u, int sign) {
    for (int e : g1_.OutEdges(u)) {
      if (assign_[g1_.edges()[e].sink] != PartialMapping::kDeleted) {
        AdjustEdgeCount(o1_, labels_.edge1[e], sign);
        committed_ -= sign;
      }
    }
    for (int e : g1_.InEdges(u)) {
      if (assign_[g1_.edges()[e].source] != PartialMapping::kDeleted) {
        AdjustEdgeCount(o1_, labels_.edge1[e], sign);
        committed_ -= sign;
      }
    }
  }

  void ApplyDelete(int u) {
    ++expansions_;
    TouchDeletedEdges(u, -1);
    committed_ += kDeleteCost;
    AdjustNodeCount(r1_, labels_.node1[u], -1);
    assign_[u] = PartialMapping::kDeleted;
  }

  void UndoDelete(int u, int64_t committed_before) {
    assign_[u] = PartialMapping::kUndecided;
    TouchDeletedEdges(u, +1);
    AdjustNodeCount(r1_, labels_.node1[u], +1);
    committed_ = committed_before;
  }

  int64_t Bound() const { return committed_ + node_lb_ + edge_lb_; }

  bool OutOfTime() {
    if (timed_out_) return true;
    if ((++clock_checks_ & 0xff) == 0 &&
        std::chrono::steady_clock::now() >= deadline_) {
      timed_out_ = true;
    }
    return timed_out_;
  }

  struct Candidate {
    int64_t bound;
    int target;  // -1 for deletion
  };

  void Dfs(size_t depth) {
    if (OutOfTime()) return;
    if (depth == order_.size()) {
      // Only insertions remain, and the bound is exact for them.
      const int64_t total = Bound();
      if (total < best_cost_) {
        best_cost_ = total;
        best_mapping_ = assign_;
        for (int& a : *best_mapping_) {
          if (a == PartialMapping::kDeleted) a = -1;
        }
        ++emitted_;
        if (config_.emit_improving && on_improved_) {
          on_improved_(*EditPathFromMapping(g1_, g2_, *best_mapping_));
        }
      }
      return;
    }
    const int u = order_[depth];
    std::vector<Candidate> candidates;
    const int64_t before = committed_;
    for (int v : targets_by_label_[labels_.node1[u]]) {
      if (inverse_[v] >= 0) continue;
      ApplyMap(u, v);
      candidates.push_back({Bound(), v});
      UndoMap(u, v, before);
    }
    ApplyDelete(u);
    candidates.push_back({Bound(), -1});
    UndoDelete(u, before);
    // Stable: mappings keep target-id order and precede deletion on ties.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                       return a.bound < b.bound;
                     });
    for (const Candidate& c : candidates) {
      if (c.bound >= best_cost_ || timed_out_) break;
      if (c.target >= 0) {
        ApplyMap(u, c.target);
        Dfs(depth + 1);
        UndoMap(u, c.target, before);
      } else {
        ApplyDelete(u);
        Dfs(depth + 1);
        UndoDelete(u, before);
      }
    }
  }

  const IrGraph& g1_;
  const IrGraph& g2_;
  const GedConfig& config_;
  const PathCallback& on_improved_;
  Labels labels_;

  std::vector<int> order_;
  std::vector<int> assign_;
  std::vector<int> inverse_;
  std::vector<std::vector<int>> targets_by_label_;
  std::vector<int> r1_, r2_, o1_, o2_;
  int64_t node_lb_ = 0;
  int64_t edge_lb_ = 0;
  int64_t committed_ = 0;
  std::vector<EdgeKeyInt> scratch_a_, scratch_b_;

  int64_t best_cost_ = INT64_MAX;
  std::optional<std::vector<int>> best_mapping_;
  int emitted_ = 0;
  int64_t expansions_ = 0;
  uint64_t clock_checks_ = 0;
  bool timed_out_ = false;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace

SubstCost NodeSubstCost(const NodeAttr& a, const NodeAttr& b) {
  if (a == b) return 0;
  return kInfeasible;
}

SubstCost EdgeSubstCost(const EdgeAttr& a, const EdgeAttr& b) {
  if (a == b) return 0;
  return kInfeasible;
}

std::string_view EditKindName(EditKind kind) {
  switch (kind) {
    case EditKind::kNodeInsert:
      return "node_insert";
    case EditKind::kNodeDelete:
      return "node_delete";
    case EditKind::kNodeSubstitute:
      return "node_substitute";
    case EditKind::kEdgeInsert:
      return "edge_insert";
    case EditKind::kEdgeDelete:
      return "edge_delete";
    case EditKind::kEdgeSubstitute:
      return "edge_substitute";
  }
  return "unknown";
}

EditCounts EditPath::Counts() const {
  EditCounts c;
  for (const EditOp& op : ops) {
    switch (op.kind) {
      case EditKind::kNodeInsert: ++c.node_insert; break;
      case EditKind::kNodeDelete: ++c.node_delete; break;
      case EditKind::kNodeSubstitute: ++c.node_substitute; break;
      case EditKind::kEdgeInsert: ++c.edge_insert; break;
      case EditKind::kEdgeDelete: ++c.edge_delete; break;
      case EditKind::kEdgeSubstitute: ++c.edge_substitute; break;
    }
  }
  return c;
}

absl::StatusOr<EditPath> EditPathFromMapping(const IrGraph& g1,
                                             const IrGraph& g2,
                                             const std::vector<int>& mapping) {
  if (static_cast<int>(mapping.size()) != g1.node_count()) {
    return MakeError(ErrorKind::kInconsistentPath, "mapping size mismatch");
  }
  EditPath path;
  path.node_mapping = mapping;
  std::vector<bool> used(g2.node_count(), false);
  for (int u = 0; u < g1.node_count(); ++u) {
    const int v = mapping[u];
    if (v < 0) {
      path.ops.push_back({EditKind::kNodeDelete, u, -1, kDeleteCost});
      continue;
    }
    if (v >= g2.node_count() || used[v]) {
      return MakeError(ErrorKind::kInconsistentPath, "mapping is not injective");
    }
    SubstCost cost = NodeSubstCost(g1.nodes()[u].attr, g2.nodes()[v].attr);
    if (!cost.has_value()) {
      return MakeError(ErrorKind::kInconsistentPath,
                       "infeasible substitution " + g1.nodes()[u].id + " -> " +
                           g2.nodes()[v].id);
    }
    used[v] = true;
    path.ops.push_back({EditKind::kNodeSubstitute, u, v, *cost});
  }
  for (int v = 0; v < g2.node_count(); ++v) {
    if (!used[v]) path.ops.push_back({EditKind::kNodeInsert, -1, v, kInsertCost});
  }
  using Bucket = std::tuple<int, int, EdgeAttr>;
  std::map<Bucket, std::deque<int>> targets;
  for (int f = 0; f < g2.edge_count(); ++f) {
    const Edge& e = g2.edges()[f];
    if (used[e.source] && used[e.sink]) {
      targets[{e.source, e.sink, e.attr}].push_back(f);
    }
  }
  std::vector<bool> matched(g2.edge_count(), false);
  for (int k = 0; k < g1.edge_count(); ++k) {
    const Edge& e = g1.edges()[k];
    const int s = mapping[e.source];
    const int t = mapping[e.sink];
    if (s >= 0 && t >= 0) {
      auto it = targets.find({s, t, e.attr});
      if (it != targets.end() && !it->second.empty()) {
        const int f = it->second.front();
        it->second.pop_front();
        matched[f] = true;
        path.ops.push_back({EditKind::kEdgeSubstitute, k, f, 0});
        continue;
      }
    }
    path.ops.push_back({EditKind::kEdgeDelete, k, -1, kDeleteCost});
  }
  for (int f = 0; f < g2.edge_count(); ++f) {
    if (!matched[f]) path.ops.push_back({EditKind::kEdgeInsert, -1, f, kInsertCost});
  }
  for (const EditOp& op : path.ops) path.total_cost += op.cost;
  return path;
}

GedResult ComputeEditPaths(const IrGraph& g1, const IrGraph& g2,
                           const GedConfig& config,
                           const PathCallback& on_improved) {
  return BranchAndBound(g1, g2, config, on_improved).Run();
}

int64_t CommittedCost(const PartialMapping& partial, const IrGraph& g1,
                      const IrGraph& g2) {
  const std::vector<int>& a = partial.assignment;
  std::vector<int> inverse(g2.node_count(), -1);
  int64_t cost = 0;
  for (int u = 0; u < g1.node_count(); ++u) {
    if (a[u] == PartialMapping::kDeleted) cost += kDeleteCost;
    if (a[u] >= 0) inverse[a[u]] = u;
  }
  using Bucket = std::tuple<int, int, EdgeAttr>;
  std::map<Bucket, int> balance;
  for (const Edge& e : g1.edges()) {
    if (a[e.source] == PartialMapping::kDeleted ||
        a[e.sink] == PartialMapping::kDeleted) {
      cost += kDeleteCost;
    } else if (a[e.source] >= 0 && a[e.sink] >= 0) {
      ++balance[{a[e.source], a[e.sink], e.attr}];
    }
  }
  for (const Edge& e : g2.edges()) {
    if (inverse[e.source] >= 0 && inverse[e.sink] >= 0) {
      --balance[{e.source, e.sink, e.attr}];
    }
  }
  for (const auto& [bucket, count] : balance) cost += std::abs(count);
  return cost;
}

int64_t LowerBound(const PartialMapping& partial, const IrGraph& g1,
                   const IrGraph& g2) {
  const std::vector<int>& a = partial.assignment;
  std::vector<bool> used(g2.node_count(), false);
  std::vector<int> rows;
  for (int u = 0; u < g1.node_count(); ++u) {
    if (a[u] == PartialMapping::kUndecided) rows.push_back(u);
    if (a[u] >= 0) used[a[u]] = true;
  }
  std::vector<int> cols;
  for (int v = 0; v < g2.node_count(); ++v) {
    if (!used[v]) cols.push_back(v);
  }
  int64_t bound = 0;
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(cols.size());
  if (r + c > 0) {
    constexpr int64_t kForbidden = int64_t{1} << 40;
    const int n = r + c;
    CostMatrix cost(n, std::vector<int64_t>(n, 0));
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < c; ++j) {
        SubstCost s = NodeSubstCost(g1.nodes()[rows[i]].attr,
                                    g2.nodes()[cols[j]].attr);
        cost[i][j] = s.has_value() ? *s : kDeleteCost + kInsertCost;
      }
      for (int j = 0; j < r; ++j) cost[i][c + j] = i == j ? kDeleteCost : kForbidden;
    }
    for (int i = 0; i < c; ++i) {
      for (int j = 0; j < c; ++j) cost[r + i][j] = i == j ? kInsertCost : kForbidden;
    }
    bound += SolveAssignment(cost).cost;
  }
  std::map<EdgeAttr, int> open;
  for (const Edge& e : g1.edges()) {
    const int s = a[e.source];
    const int t = a[e.sink];
    const bool touches_deleted =
        s == PartialMapping::kDeleted || t == PartialMapping::kDeleted;
    if (!touches_deleted && !(s >= 0 && t >= 0)) ++open[e.attr];
  }
  for (const Edge& e : g2.edges()) {
    if (!(used[e.source] && used[e.sink])) --open[e.attr];
  }
  for (const auto& [attr, count] : open) bound += std::abs(count);
  return bound;
}

}  // namespace ireco
