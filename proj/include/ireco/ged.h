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

#ifndef IRECO_GED_H_
#define IRECO_GED_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ireco/graph.h"

namespace ireco {

// Substitution cost; nullopt is the INFEASIBLE sentinel. Infeasible pairs are
// never branched on, so no arithmetic infinity exists anywhere.
using SubstCost = std::optional<int>;
inline constexpr std::nullopt_t kInfeasible = std::nullopt;

inline constexpr int kInsertCost = 1;
inline constexpr int kDeleteCost = 1;

// 0 iff op, dtype, operand dtypes and unique attributes all match.
SubstCost NodeSubstCost(const NodeAttr& a, const NodeAttr& b);
// 0 iff source dtype, sink dtype and index (including absence) all match.
SubstCost EdgeSubstCost(const EdgeAttr& a, const EdgeAttr& b);

enum class EditKind {
  kNodeInsert,
  kNodeDelete,
  kNodeSubstitute,
  kEdgeInsert,
  kEdgeDelete,
  kEdgeSubstitute,
};

std::string_view EditKindName(EditKind kind);

inline bool IsNodeEdit(EditKind kind) {
  return kind == EditKind::kNodeInsert || kind == EditKind::kNodeDelete ||
         kind == EditKind::kNodeSubstitute;
}

// One edit. source indexes g1 (deletions, substitutions) and target indexes
// g2 (insertions, substitutions); both index nodes or edges per kind.
struct EditOp {
  EditKind kind;
  int source = -1;
  int target = -1;
  int cost = 0;

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

struct EditCounts {
  int node_insert = 0;
  int node_delete = 0;
  int node_substitute = 0;
  int edge_insert = 0;
  int edge_delete = 0;
  int edge_substitute = 0;
};

struct EditPath {
  std::vector<EditOp> ops;
  int64_t total_cost = 0;
  // node_mapping[u] is the g2 node substituted for g1 node u, or -1 when u
  // is deleted.
  std::vector<int> node_mapping;

  EditCounts Counts() const;
};

// Builds the complete edit path induced by a node mapping: edges between
// mapped endpoints pair up by (image endpoints, attributes) in occurrence
// order; everything else is deleted or inserted. Ops are ordered: node
// substitutions/deletions (g1 order), node insertions (g2 order), edge
// substitutions/deletions (g1 order), edge insertions (g2 order). Fails with
// kInconsistentPath for non-injective or infeasible mappings.
absl::StatusOr<EditPath> EditPathFromMapping(const IrGraph& g1,
                                             const IrGraph& g2,
                                             const std::vector<int>& mapping);

struct GedConfig {
  std::chrono::duration<double> time_limit = std::chrono::seconds(60);
  bool emit_improving = true;
  // Unused; the search is deterministic.
  uint64_t rng_seed = 0;
};

struct GedResult {
  EditPath best;
  // True when the search finished and best is a proven optimum; false when
  // the time limit cut it short (best effort).
  bool optimal = false;
  int paths_emitted = 0;
  int64_t expansions = 0;
};

// Called on the search thread with each strictly improving complete path.
using PathCallback = std::function<void(const EditPath&)>;

// Exact anytime depth-first branch and bound. Source nodes are ordered by an
// optimal assignment over node costs with a local edge term; at each level
// the candidates are tried by (cost so far + lower bound, then target id),
// with deletion after mappings of equal bound.
GedResult ComputeEditPaths(const IrGraph& g1, const IrGraph& g2,
                           const GedConfig& config,
                           const PathCallback& on_improved = {});

// Decision per g1 node: kUndecided, kDeleted, or a g2 node index.
struct PartialMapping {
  static constexpr int kUndecided = -2;
  static constexpr int kDeleted = -1;
  std::vector<int> assignment;
};

// Cost already fixed by the decided part of a partial mapping: deleted nodes,
// edges touching a deleted node, and edge differences between pairs whose
// endpoints are all decided and mapped.
int64_t CommittedCost(const PartialMapping& partial, const IrGraph& g1,
                      const IrGraph& g2);

// Admissible bound on the cost still to be paid by any completion: optimal
// linear assignment over the undecided g1 and unused g2 nodes (infeasible
// pairs priced as delete + insert) plus, per edge attribute, the imbalance in
// the number of still-open edges. Exact for complete mappings.
int64_t LowerBound(const PartialMapping& partial, const IrGraph& g1,
                   const IrGraph& g2);

}  // namespace ireco

#endif  // IRECO_GED_H_
