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

#ifndef IRECO_PATCH_H_
#define IRECO_PATCH_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "ireco/ged.h"
#include "ireco/graph.h"

namespace ireco {

inline constexpr int kPatchSchemaVersion = 1;

enum class EntryKind { kNode, kEdge };
enum class EntryAction { kInsert, kDelete, kSubstitute };

std::string_view EntryKindName(EntryKind kind);
std::string_view EntryActionName(EntryAction action);

// Everything needed to construct a node in isolation; its operands arrive
// later through edge entries. For substitutions id names the original node
// and counterpart_id the revised one.
struct NodeInfo {
  std::string id;
  std::string op;
  std::string dtype_str;
  std::vector<std::string> operand_dtype_str;
  std::map<std::string, std::string> unique_attrs;
  std::optional<std::string> counterpart_id;

  friend bool operator==(const NodeInfo&, const NodeInfo&) = default;
};

struct EdgeRef {
  std::string source;
  std::string sink;
  int occurrence = 0;
  int position = 0;

  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

// Insertions address the revised graph, deletions and the primary side of
// substitutions the original graph. position is the operand slot at the
// sink; index is the cost attribute and is absent for commutative sinks.
struct EdgeInfo {
  std::string source;
  std::string sink;
  int occurrence = 0;
  int position = 0;
  std::optional<int> index;
  std::string source_data_type;
  std::string sink_data_type;
  std::optional<EdgeRef> counterpart;

  friend bool operator==(const EdgeInfo&, const EdgeInfo&) = default;
};

struct EditPathEntry {
  EntryKind kind = EntryKind::kNode;
  EntryAction action = EntryAction::kSubstitute;
  int cost = 0;
  std::optional<NodeInfo> node_info;
  std::optional<EdgeInfo> edge_info;

  friend bool operator==(const EditPathEntry&, const EditPathEntry&) = default;
};

// Signature of the revised function, needed to restore parameter order and
// the return designation after application.
struct TargetFunction {
  std::string name;
  std::vector<std::string> params;
  std::string return_node;

  friend bool operator==(const TargetFunction&, const TargetFunction&) = default;
};

struct IrPatch {
  int schema_version = kPatchSchemaVersion;
  std::string source_ir_hash;
  std::string target_ir_hash;
  TargetFunction target_function;
  std::vector<EditPathEntry> edit_paths;
  int64_t total_cost = 0;

  friend bool operator==(const IrPatch&, const IrPatch&) = default;
};

// One entry per op of path, in path order, including zero-cost
// substitutions. Fails with kInconsistentPath if an op indexes outside g1/g2.
absl::StatusOr<IrPatch> PatchFromEditPath(const EditPath& path,
                                          const IrGraph& g1, const IrGraph& g2,
                                          std::string source_ir_hash,
                                          std::string target_ir_hash);

// Canonical JSON: sorted keys, two-space indent, trailing newline. Absent
// optionals are omitted.
std::string SerializePatch(const IrPatch& patch);

// Fails with kSchemaError for malformed JSON, a schema_version other than
// kPatchSchemaVersion, missing or mistyped fields, unknown kinds or actions,
// info blocks that do not match the kind, or costs inconsistent with the
// unit cost model.
absl::StatusOr<IrPatch> ParsePatch(std::string_view text);

// Number of insert and delete entries; equals total_cost for a valid patch.
int64_t CostBearingEntryCount(const IrPatch& patch);

}  // namespace ireco

#endif  // IRECO_PATCH_H_
