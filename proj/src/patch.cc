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

#include "ireco/patch.h"

#include <utility>

#include "ireco/errors.h"
#include "ireco/status_macros.h"
#include "json.hpp"

namespace ireco {
namespace {

using nlohmann::json;

NodeInfo NodeInfoOf(const GraphNode& node) {
  NodeInfo info;
  info.id = node.id;
  info.op = node.attr.op;
  info.dtype_str = node.attr.dtype_str;
  info.operand_dtype_str = node.attr.operand_dtype_str;
  info.unique_attrs = node.attr.unique_attrs;
  return info;
}

EdgeRef EdgeRefOf(const Edge& e, const IrGraph& g) {
  return EdgeRef{g.nodes()[e.source].id, g.nodes()[e.sink].id, e.occurrence,
                 e.position};
}

EdgeInfo EdgeInfoOf(const Edge& e, const IrGraph& g) {
  EdgeInfo info;
  info.source = g.nodes()[e.source].id;
  info.sink = g.nodes()[e.sink].id;
  info.occurrence = e.occurrence;
  info.position = e.position;
  info.index = e.attr.index;
  info.source_data_type = e.attr.source_data_type;
  info.sink_data_type = e.attr.sink_data_type;
  return info;
}

json EdgeRefJson(const EdgeRef& ref) {
  return json{{"source", ref.source},
              {"sink", ref.sink},
              {"occurrence", ref.occurrence},
              {"position", ref.position}};
}

json EntryJson(const EditPathEntry& entry) {
  json j;
  j["kind"] = std::string(EntryKindName(entry.kind));
  j["action"] = std::string(EntryActionName(entry.action));
  j["cost"] = entry.cost;
  if (entry.node_info.has_value()) {
    const NodeInfo& n = *entry.node_info;
    json info{{"id", n.id},
              {"op", n.op},
              {"dtype_str", n.dtype_str},
              {"operand_dtype_str", n.operand_dtype_str},
              {"unique_attrs", n.unique_attrs}};
    if (n.counterpart_id.has_value()) info["counterpart_id"] = *n.counterpart_id;
    j["node_info"] = std::move(info);
  }
  if (entry.edge_info.has_value()) {
    const EdgeInfo& e = *entry.edge_info;
    json info{{"source", e.source},
              {"sink", e.sink},
              {"occurrence", e.occurrence},
              {"position", e.position},
              {"source_data_type", e.source_data_type},
              {"sink_data_type", e.sink_data_type}};
    if (e.index.has_value()) info["index"] = *e.index;
    if (e.counterpart.has_value()) info["counterpart"] = EdgeRefJson(*e.counterpart);
    j["edge_info"] = std::move(info);
  }
  return j;
}

absl::Status SchemaError(const std::string& message) {
  return MakeError(ErrorKind::kSchemaError, message);
}

// Typed field access that reports the JSON path of whatever is wrong.
class Reader {
 public:
  Reader(const json& object, std::string path)
      : object_(object), path_(std::move(path)) {}

  absl::Status RequireObject() const {
    if (!object_.is_object()) return SchemaError(path_ + " must be an object");
    return absl::OkStatus();
  }

  bool Has(const char* key) const { return object_.contains(key); }

  absl::StatusOr<const json*> Field(const char* key) const {
    auto it = object_.find(key);
    if (it == object_.end()) {
      return SchemaError("missing field " + path_ + "." + key);
    }
    return &*it;
  }

  absl::StatusOr<std::string> String(const char* key) const {
    IRECO_ASSIGN_OR_RETURN(const json* v, Field(key));
    if (!v->is_string()) return SchemaError(path_ + "." + key + " must be a string");
    return v->get<std::string>();
  }

  absl::StatusOr<int64_t> Integer(const char* key) const {
    IRECO_ASSIGN_OR_RETURN(const json* v, Field(key));
    if (!v->is_number_integer()) {
      return SchemaError(path_ + "." + key + " must be an integer");
    }
    return v->get<int64_t>();
  }

  absl::StatusOr<int> NonNegative(const char* key) const {
    IRECO_ASSIGN_OR_RETURN(int64_t v, Integer(key));
    if (v < 0 || v > INT32_MAX) {
      return SchemaError(path_ + "." + key + " is out of range");
    }
    return static_cast<int>(v);
  }

  absl::StatusOr<std::vector<std::string>> StringList(const char* key) const {
    IRECO_ASSIGN_OR_RETURN(const json* v, Field(key));
    if (!v->is_array()) return SchemaError(path_ + "." + key + " must be an array");
    std::vector<std::string> out;
    for (const json& item : *v) {
      if (!item.is_string()) {
        return SchemaError(path_ + "." + key + " must contain strings");
      }
      out.push_back(item.get<std::string>());
    }
    return out;
  }

  absl::StatusOr<std::map<std::string, std::string>> StringMap(
      const char* key) const {
    IRECO_ASSIGN_OR_RETURN(const json* v, Field(key));
    if (!v->is_object()) return SchemaError(path_ + "." + key + " must be an object");
    std::map<std::string, std::string> out;
    for (auto it = v->begin(); it != v->end(); ++it) {
      if (!it->is_string()) {
        return SchemaError(path_ + "." + key + " values must be strings");
      }
      out[it.key()] = it->get<std::string>();
    }
    return out;
  }

  const std::string& path() const { return path_; }

 private:
  const json& object_;
  std::string path_;
};

absl::StatusOr<EdgeRef> ParseEdgeRef(const json& j, const std::string& path) {
  Reader r(j, path);
  IRECO_RETURN_IF_ERROR(r.RequireObject());
  EdgeRef ref;
  IRECO_ASSIGN_OR_RETURN(ref.source, r.String("source"));
  IRECO_ASSIGN_OR_RETURN(ref.sink, r.String("sink"));
  IRECO_ASSIGN_OR_RETURN(ref.occurrence, r.NonNegative("occurrence"));
  IRECO_ASSIGN_OR_RETURN(ref.position, r.NonNegative("position"));
  return ref;
}

absl::StatusOr<NodeInfo> ParseNodeInfo(const json& j, const std::string& path) {
  Reader r(j, path);
  IRECO_RETURN_IF_ERROR(r.RequireObject());
  NodeInfo info;
  IRECO_ASSIGN_OR_RETURN(info.id, r.String("id"));
  IRECO_ASSIGN_OR_RETURN(info.op, r.String("op"));
  IRECO_ASSIGN_OR_RETURN(info.dtype_str, r.String("dtype_str"));
  IRECO_ASSIGN_OR_RETURN(info.operand_dtype_str, r.StringList("operand_dtype_str"));
  IRECO_ASSIGN_OR_RETURN(info.unique_attrs, r.StringMap("unique_attrs"));
  if (r.Has("counterpart_id")) {
    IRECO_ASSIGN_OR_RETURN(info.counterpart_id, r.String("counterpart_id"));
  }
  return info;
}

absl::StatusOr<EdgeInfo> ParseEdgeInfo(const json& j, const std::string& path) {
  Reader r(j, path);
  IRECO_RETURN_IF_ERROR(r.RequireObject());
  EdgeInfo info;
  IRECO_ASSIGN_OR_RETURN(info.source, r.String("source"));
  IRECO_ASSIGN_OR_RETURN(info.sink, r.String("sink"));
  IRECO_ASSIGN_OR_RETURN(info.occurrence, r.NonNegative("occurrence"));
  IRECO_ASSIGN_OR_RETURN(info.position, r.NonNegative("position"));
  IRECO_ASSIGN_OR_RETURN(info.source_data_type, r.String("source_data_type"));
  IRECO_ASSIGN_OR_RETURN(info.sink_data_type, r.String("sink_data_type"));
  if (r.Has("index")) {
    IRECO_ASSIGN_OR_RETURN(info.index, r.NonNegative("index"));
  }
  if (r.Has("counterpart")) {
    IRECO_ASSIGN_OR_RETURN(info.counterpart,
                           ParseEdgeRef(j.at("counterpart"), path + ".counterpart"));
  }
  return info;
}

absl::StatusOr<EditPathEntry> ParseEntry(const json& j, const std::string& path) {
  Reader r(j, path);
  IRECO_RETURN_IF_ERROR(r.RequireObject());
  EditPathEntry entry;
  IRECO_ASSIGN_OR_RETURN(std::string kind, r.String("kind"));
  if (kind == "node") {
    entry.kind = EntryKind::kNode;
  } else if (kind == "edge") {
    entry.kind = EntryKind::kEdge;
  } else {
    return SchemaError(path + ".kind: unknown kind '" + kind + "'");
  }
  IRECO_ASSIGN_OR_RETURN(std::string action, r.String("action"));
  if (action == "insert") {
    entry.action = EntryAction::kInsert;
  } else if (action == "delete") {
    entry.action = EntryAction::kDelete;
  } else if (action == "substitute") {
    entry.action = EntryAction::kSubstitute;
  } else {
    return SchemaError(path + ".action: unknown action '" + action + "'");
  }
  IRECO_ASSIGN_OR_RETURN(int64_t cost, r.Integer("cost"));
  const int64_t expected = entry.action == EntryAction::kSubstitute ? 0 : 1;
  if (cost != expected) {
    return SchemaError(path + ".cost must be " + std::to_string(expected) +
                       " for action " + action);
  }
  entry.cost = static_cast<int>(cost);
  const bool has_node = r.Has("node_info");
  const bool has_edge = r.Has("edge_info");
  if (entry.kind == EntryKind::kNode) {
    if (!has_node || has_edge) {
      return SchemaError(path + ": node entries carry exactly node_info");
    }
    IRECO_ASSIGN_OR_RETURN(entry.node_info,
                           ParseNodeInfo(j.at("node_info"), path + ".node_info"));
    if (entry.node_info->counterpart_id.has_value() !=
        (entry.action == EntryAction::kSubstitute)) {
      return SchemaError(path +
                         ".node_info.counterpart_id is required for and only "
                         "for substitutions");
    }
  } else {
    if (!has_edge || has_node) {
      return SchemaError(path + ": edge entries carry exactly edge_info");
    }
    IRECO_ASSIGN_OR_RETURN(entry.edge_info,
                           ParseEdgeInfo(j.at("edge_info"), path + ".edge_info"));
    if (entry.edge_info->counterpart.has_value() !=
        (entry.action == EntryAction::kSubstitute)) {
      return SchemaError(path +
                         ".edge_info.counterpart is required for and only for "
                         "substitutions");
    }
  }
  return entry;
}

}  // namespace

std::string_view EntryKindName(EntryKind kind) {
  return kind == EntryKind::kNode ? "node" : "edge";
}

std::string_view EntryActionName(EntryAction action) {
  switch (action) {
    case EntryAction::kInsert:
      return "insert";
    case EntryAction::kDelete:
      return "delete";
    case EntryAction::kSubstitute:
      return "substitute";
  }
  return "unknown";
}

absl::StatusOr<IrPatch> PatchFromEditPath(const EditPath& path,
                                          const IrGraph& g1, const IrGraph& g2,
                                          std::string source_ir_hash,
                                          std::string target_ir_hash) {
  IrPatch patch;
  patch.source_ir_hash = std::move(source_ir_hash);
  patch.target_ir_hash = std::move(target_ir_hash);
  patch.target_function = {g2.function_name, g2.params, g2.return_node};
  auto check = [](int index, int limit, const char* what) -> absl::Status {
    if (index < 0 || index >= limit) {
      return MakeError(ErrorKind::kInconsistentPath,
                       std::string(what) + " index " + std::to_string(index) +
                           " is out of range");
    }
    return absl::OkStatus();
  };
  for (const EditOp& op : path.ops) {
    EditPathEntry entry;
    entry.cost = op.cost;
    entry.kind = IsNodeEdit(op.kind) ? EntryKind::kNode : EntryKind::kEdge;
    switch (op.kind) {
      case EditKind::kNodeInsert:
        IRECO_RETURN_IF_ERROR(check(op.target, g2.node_count(), "target node"));
        entry.action = EntryAction::kInsert;
        entry.node_info = NodeInfoOf(g2.nodes()[op.target]);
        break;
      case EditKind::kNodeDelete:
        IRECO_RETURN_IF_ERROR(check(op.source, g1.node_count(), "source node"));
        entry.action = EntryAction::kDelete;
        entry.node_info = NodeInfoOf(g1.nodes()[op.source]);
        break;
      case EditKind::kNodeSubstitute:
        IRECO_RETURN_IF_ERROR(check(op.source, g1.node_count(), "source node"));
        IRECO_RETURN_IF_ERROR(check(op.target, g2.node_count(), "target node"));
        entry.action = EntryAction::kSubstitute;
        entry.node_info = NodeInfoOf(g1.nodes()[op.source]);
        entry.node_info->counterpart_id = g2.nodes()[op.target].id;
        break;
      case EditKind::kEdgeInsert:
        IRECO_RETURN_IF_ERROR(check(op.target, g2.edge_count(), "target edge"));
        entry.action = EntryAction::kInsert;
        entry.edge_info = EdgeInfoOf(g2.edges()[op.target], g2);
        break;
      case EditKind::kEdgeDelete:
        IRECO_RETURN_IF_ERROR(check(op.source, g1.edge_count(), "source edge"));
        entry.action = EntryAction::kDelete;
        entry.edge_info = EdgeInfoOf(g1.edges()[op.source], g1);
        break;
      case EditKind::kEdgeSubstitute:
        IRECO_RETURN_IF_ERROR(check(op.source, g1.edge_count(), "source edge"));
        IRECO_RETURN_IF_ERROR(check(op.target, g2.edge_count(), "target edge"));
        entry.action = EntryAction::kSubstitute;
        entry.edge_info = EdgeInfoOf(g1.edges()[op.source], g1);
        entry.edge_info->counterpart = EdgeRefOf(g2.edges()[op.target], g2);
        break;
    }
    patch.total_cost += entry.cost;
    patch.edit_paths.push_back(std::move(entry));
  }
  if (patch.total_cost != path.total_cost) {
    return MakeError(ErrorKind::kInconsistentPath,
                     "path total_cost does not match its ops");
  }
  return patch;
}

std::string SerializePatch(const IrPatch& patch) {
  json j;
  j["schema_version"] = patch.schema_version;
  j["source_ir_hash"] = patch.source_ir_hash;
  j["target_ir_hash"] = patch.target_ir_hash;
  j["target_function"] = json{{"name", patch.target_function.name},
                              {"params", patch.target_function.params},
                              {"return_node", patch.target_function.return_node}};
  j["total_cost"] = patch.total_cost;
  json entries = json::array();
  for (const EditPathEntry& entry : patch.edit_paths) {
    entries.push_back(EntryJson(entry));
  }
  j["edit_paths"] = std::move(entries);
  return j.dump(2) + "\n";
}

absl::StatusOr<IrPatch> ParsePatch(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return SchemaError("patch is not valid JSON");
  Reader r(j, "patch");
  IRECO_RETURN_IF_ERROR(r.RequireObject());
  IrPatch patch;
  IRECO_ASSIGN_OR_RETURN(int64_t version, r.Integer("schema_version"));
  if (version != kPatchSchemaVersion) {
    return SchemaError("unsupported schema_version " + std::to_string(version) +
                       " (expected " + std::to_string(kPatchSchemaVersion) + ")");
  }
  IRECO_ASSIGN_OR_RETURN(patch.source_ir_hash, r.String("source_ir_hash"));
  IRECO_ASSIGN_OR_RETURN(patch.target_ir_hash, r.String("target_ir_hash"));
  IRECO_ASSIGN_OR_RETURN(const json* target, r.Field("target_function"));
  Reader t(*target, "patch.target_function");
  IRECO_RETURN_IF_ERROR(t.RequireObject());
  IRECO_ASSIGN_OR_RETURN(patch.target_function.name, t.String("name"));
  IRECO_ASSIGN_OR_RETURN(patch.target_function.params, t.StringList("params"));
  IRECO_ASSIGN_OR_RETURN(patch.target_function.return_node, t.String("return_node"));
  IRECO_ASSIGN_OR_RETURN(patch.total_cost, r.Integer("total_cost"));
  IRECO_ASSIGN_OR_RETURN(const json* entries, r.Field("edit_paths"));
  if (!entries->is_array()) return SchemaError("patch.edit_paths must be an array");
  int64_t sum = 0;
  for (size_t i = 0; i < entries->size(); ++i) {
    IRECO_ASSIGN_OR_RETURN(
        EditPathEntry entry,
        ParseEntry((*entries)[i], "patch.edit_paths[" + std::to_string(i) + "]"));
    sum += entry.cost;
    patch.edit_paths.push_back(std::move(entry));
  }
  if (sum != patch.total_cost) {
    return SchemaError("patch.total_cost " + std::to_string(patch.total_cost) +
                       " does not equal the entry cost sum " + std::to_string(sum));
  }
  return patch;
}

int64_t CostBearingEntryCount(const IrPatch& patch) {
  int64_t count = 0;
  for (const EditPathEntry& entry : patch.edit_paths) {
    if (entry.action != EntryAction::kSubstitute) ++count;
  }
  return count;
}

}  // namespace ireco
