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

#include "ireco/patch_applier.h"

#include <algorithm>
#include <unordered_map>

#include "ireco/errors.h"
#include "ireco/ir_hash.h"
#include "ireco/ir_validate.h"
#include "ireco/status_macros.h"
#include "json.hpp"

namespace ireco {
namespace {

std::string Describe(const EdgeInfo& e) {
  return e.source + "->" + e.sink + "#" + std::to_string(e.occurrence) +
         " (slot " + std::to_string(e.position) + ")";
}

absl::Status UnknownTarget(const std::string& what) {
  return MakeError(ErrorKind::kUnknownTarget, what);
}

bool IsDummyId(const std::string& id) {
  return id.compare(0, kReservedIdPrefix.size(), kReservedIdPrefix.data(),
                    kReservedIdPrefix.size()) == 0;
}

// Mutable copy of one function. Dummies are tracked separately from real
// nodes and never appear in nodes_.
class WorkingFunction {
 public:
  explicit WorkingFunction(const Function& f) {
    for (const Node& node : f.nodes) {
      order_.push_back(node.id);
      nodes_.emplace(node.id, node);
    }
  }

  Node* Find(const std::string& id) {
    auto it = nodes_.find(id);
    return it == nodes_.end() ? nullptr : &it->second;
  }

  bool Contains(const std::string& id) const { return nodes_.count(id) > 0; }

  std::string NewDummy(DataType type) {
    std::string id = std::string(kReservedIdPrefix) + std::to_string(next_dummy_++);
    dummy_types_.emplace(id, type);
    return id;
  }
  bool IsDummy(const std::string& id) const { return dummy_types_.count(id) > 0; }
  DataType DummyType(const std::string& id) const { return dummy_types_.at(id); }
  void DropDummy(const std::string& id) { dummy_types_.erase(id); }
  int dummies_created() const { return next_dummy_; }
  std::vector<std::string> Dummies() const {
    std::vector<std::string> out;
    for (const auto& [id, type] : dummy_types_) out.push_back(id);
    return out;
  }

  std::vector<std::string> UsersOf(const std::string& id) const {
    std::vector<std::string> users;
    for (const std::string& node_id : order_) {
      const Node& node = nodes_.at(node_id);
      if (std::find(node.operands.begin(), node.operands.end(), id) !=
          node.operands.end()) {
        users.push_back(node_id);
      }
    }
    return users;
  }

  void Remove(const std::string& id) {
    for (const std::string& operand : nodes_.at(id).operands) {
      if (IsDummy(operand)) DropDummy(operand);
    }
    nodes_.erase(id);
    order_.erase(std::find(order_.begin(), order_.end(), id));
  }

  void Add(Node node) {
    order_.push_back(node.id);
    std::string id = node.id;
    nodes_.emplace(std::move(id), std::move(node));
  }

  // Invariant 1: every operand names a live node or a live dummy.
  bool SlotsPopulated() const {
    for (const auto& [id, node] : nodes_) {
      for (const std::string& operand : node.operands) {
        if (!nodes_.count(operand) && !dummy_types_.count(operand)) return false;
      }
    }
    return true;
  }

  std::vector<Node> TakeNodes() {
    std::vector<Node> out;
    for (const std::string& id : order_) out.push_back(std::move(nodes_.at(id)));
    return out;
  }

 private:
  std::unordered_map<std::string, Node> nodes_;
  std::vector<std::string> order_;
  std::map<std::string, DataType> dummy_types_;
  int next_dummy_ = 0;
};

absl::StatusOr<DataType> ParseType(const std::string& text) {
  std::optional<DataType> type = DataType::FromString(text);
  if (!type.has_value()) {
    return MakeError(ErrorKind::kInconsistentPatch, "bad data type '" + text + "'");
  }
  return *type;
}

class Applier {
 public:
  Applier(const Function& f, const IrPatch& patch) : work_(f), patch_(patch) {
    for (const Node& node : f.nodes) original_ids_.insert(node.id);
  }

  absl::StatusOr<Function> Run() {
    std::vector<const EditPathEntry*> edge_deletes, node_deletes, node_subs,
        node_inserts, edge_inserts, edge_subs;
    for (const EditPathEntry& e : patch_.edit_paths) {
      const bool node = e.kind == EntryKind::kNode;
      switch (e.action) {
        case EntryAction::kDelete:
          (node ? node_deletes : edge_deletes).push_back(&e);
          break;
        case EntryAction::kSubstitute:
          (node ? node_subs : edge_subs).push_back(&e);
          break;
        case EntryAction::kInsert:
          (node ? node_inserts : edge_inserts).push_back(&e);
          break;
      }
    }
    IRECO_RETURN_IF_ERROR(DeleteEdges(edge_deletes));
    report_.slots_populated_after_phase.push_back(work_.SlotsPopulated());
    IRECO_RETURN_IF_ERROR(DeleteNodes(node_deletes));
    report_.slots_populated_after_phase.push_back(work_.SlotsPopulated());
    IRECO_RETURN_IF_ERROR(UpdateNodes(node_subs, node_inserts));
    report_.slots_populated_after_phase.push_back(work_.SlotsPopulated());
    IRECO_RETURN_IF_ERROR(InsertEdges(edge_inserts, edge_subs));
    report_.slots_populated_after_phase.push_back(work_.SlotsPopulated());
    return Finish();
  }

  ApplyReport& report() { return report_; }

 private:
  // Slots are resolved against the graph as it stood before the phase, so
  // the order of deletions within the phase does not matter.
  absl::Status DeleteEdges(const std::vector<const EditPathEntry*>& entries) {
    std::vector<std::pair<Node*, int>> slots;
    for (const EditPathEntry* entry : entries) {
      const EdgeInfo& e = *entry->edge_info;
      Node* sink = work_.Find(e.sink);
      if (sink == nullptr || e.position >= static_cast<int>(sink->operands.size()) ||
          sink->operands[e.position] != e.source) {
        return UnknownTarget("edge " + Describe(e) + " is not in the original");
      }
      for (const auto& [n, p] : slots) {
        if (n == sink && p == e.position) {
          return MakeError(ErrorKind::kInconsistentPatch,
                           "edge " + Describe(e) + " is deleted twice");
        }
      }
      slots.emplace_back(sink, e.position);
    }
    for (size_t i = 0; i < entries.size(); ++i) {
      IRECO_ASSIGN_OR_RETURN(DataType type,
                             ParseType(entries[i]->edge_info->source_data_type));
      slots[i].first->operands[slots[i].second] = work_.NewDummy(type);
      ++report_.phase_counts.edge_deletions;
    }
    return absl::OkStatus();
  }

  absl::Status DeleteNodes(const std::vector<const EditPathEntry*>& entries) {
    for (const EditPathEntry* entry : entries) {
      const std::string& id = entry->node_info->id;
      if (!work_.Contains(id) || !original_ids_.count(id)) {
        return UnknownTarget("node '" + id + "' is not in the original");
      }
      std::vector<std::string> users = work_.UsersOf(id);
      if (!users.empty()) {
        std::string list;
        for (const std::string& u : users) list += (list.empty() ? "" : ", ") + u;
        return MakeError(ErrorKind::kInvariantViolation,
                         "node '" + id + "' violates invariant 2: still used by " +
                             list);
      }
      work_.Remove(id);
      ++report_.phase_counts.node_deletions;
    }
    return absl::OkStatus();
  }

  absl::Status UpdateNodes(const std::vector<const EditPathEntry*>& subs,
                           const std::vector<const EditPathEntry*>& inserts) {
    for (const EditPathEntry* entry : subs) {
      const NodeInfo& info = *entry->node_info;
      if (!work_.Contains(info.id) || !original_ids_.count(info.id)) {
        return UnknownTarget("node '" + info.id + "' is not in the original");
      }
      const std::string& revised = *info.counterpart_id;
      if (!report_.substitutions.node_renames.emplace(revised, info.id).second) {
        return MakeError(ErrorKind::kInconsistentPatch,
                         "revised node '" + revised + "' is substituted twice");
      }
      if (!substituted_.insert(info.id).second) {
        return MakeError(ErrorKind::kInconsistentPatch,
                         "original node '" + info.id + "' is substituted twice");
      }
      ++report_.phase_counts.node_substitutions;
    }
    for (const EditPathEntry* entry : inserts) {
      const NodeInfo& info = *entry->node_info;
      if (report_.substitutions.node_renames.count(info.id) ||
          report_.inserted_node_ids.count(info.id)) {
        return MakeError(ErrorKind::kInconsistentPatch,
                         "revised node '" + info.id + "' is produced twice");
      }
      std::optional<OpKind> op = OpKindFromName(info.op);
      if (!op.has_value()) {
        return MakeError(ErrorKind::kInconsistentPatch, "unknown op '" + info.op + "'");
      }
      Node node;
      node.id = FreshId(info.id);
      node.op = *op;
      IRECO_ASSIGN_OR_RETURN(node.type, ParseType(info.dtype_str));
      node.attrs = info.unique_attrs;
      for (const std::string& dtype : info.operand_dtype_str) {
        IRECO_ASSIGN_OR_RETURN(DataType type, ParseType(dtype));
        node.operands.push_back(work_.NewDummy(type));
      }
      report_.inserted_node_ids[info.id] = node.id;
      work_.Add(std::move(node));
      ++report_.phase_counts.node_insertions;
    }
    return absl::OkStatus();
  }

  std::string FreshId(const std::string& wanted) {
    if (!work_.Contains(wanted) && !IsDummyId(wanted)) return wanted;
    const std::string base = IsDummyId(wanted) ? "n" : wanted;
    for (int suffix = 1;; ++suffix) {
      std::string id = base + "." + std::to_string(suffix);
      if (!work_.Contains(id)) return id;
    }
  }

  // Maps a revised-graph id to the node that plays its role in the working
  // copy. This is a single lookup per namespace: revised ids and original
  // ids never chain into each other.
  absl::StatusOr<std::string> WorkingId(const std::string& revised) const {
    auto renamed = report_.substitutions.node_renames.find(revised);
    if (renamed != report_.substitutions.node_renames.end()) return renamed->second;
    auto inserted = report_.inserted_node_ids.find(revised);
    if (inserted != report_.inserted_node_ids.end()) return inserted->second;
    // Original nodes the patch never mentions keep their id.
    if (original_ids_.count(revised) && work_.Contains(revised) &&
        !substituted_.count(revised)) {
      return revised;
    }
    return UnknownTarget("revised node '" + revised + "' has no counterpart");
  }

  absl::Status InsertEdges(const std::vector<const EditPathEntry*>& inserts,
                           const std::vector<const EditPathEntry*>& subs) {
    for (const EditPathEntry* entry : subs) {
      const EdgeInfo& e = *entry->edge_info;
      Node* sink = work_.Find(e.sink);
      if (sink == nullptr || e.position >= static_cast<int>(sink->operands.size()) ||
          sink->operands[e.position] != e.source) {
        return UnknownTarget("edge " + Describe(e) + " is not in the original");
      }
      const EdgeRef& to = *e.counterpart;
      IRECO_ASSIGN_OR_RETURN(std::string sink_w, WorkingId(to.sink));
      IRECO_ASSIGN_OR_RETURN(std::string source_w, WorkingId(to.source));
      if (sink_w != e.sink || source_w != e.source) {
        return MakeError(ErrorKind::kInconsistentPatch,
                         "edge " + Describe(e) +
                             " is substituted across a different node mapping");
      }
      if (IsCommutative(sink->op) && to.position != e.position) {
        report_.substitutions.operand_index_remaps[{e.sink, to.position}] = e.position;
      }
      ++report_.phase_counts.edge_substitutions;
    }
    struct Pending {
      const EdgeInfo* info;
      std::string sink;
      std::string source;
    };
    std::vector<Pending> pending;
    for (const EditPathEntry* entry : inserts) {
      const EdgeInfo& e = *entry->edge_info;
      Pending p{&e, "", ""};
      IRECO_ASSIGN_OR_RETURN(p.sink, WorkingId(e.sink));
      IRECO_ASSIGN_OR_RETURN(p.source, WorkingId(e.source));
      pending.push_back(std::move(p));
    }
    // Commutative sinks take dummies lowest slot first, in revised operand
    // order, which keeps the result deterministic.
    std::stable_sort(pending.begin(), pending.end(),
                     [](const Pending& a, const Pending& b) {
                       if (a.sink != b.sink) return a.sink < b.sink;
                       return a.info->position < b.info->position;
                     });
    for (const Pending& p : pending) {
      const EdgeInfo& e = *p.info;
      Node* sink = work_.Find(p.sink);
      Node* source = work_.Find(p.source);
      if (sink == nullptr || source == nullptr) {
        return UnknownTarget("edge " + Describe(e) + " has a missing endpoint");
      }
      int slot = -1;
      if (IsCommutative(sink->op)) {
        for (size_t i = 0; i < sink->operands.size(); ++i) {
          if (work_.IsDummy(sink->operands[i])) {
            slot = static_cast<int>(i);
            break;
          }
        }
        if (slot >= 0 && slot != e.position) {
          report_.substitutions.operand_index_remaps[{p.sink, e.position}] = slot;
        }
      } else if (e.position < static_cast<int>(sink->operands.size()) &&
                 work_.IsDummy(sink->operands[e.position])) {
        slot = e.position;
      }
      if (slot < 0) {
        return UnknownTarget("edge " + Describe(e) + ": slot of '" + p.sink +
                             "' does not hold a dummy");
      }
      const std::string dummy = sink->operands[slot];
      if (!(work_.DummyType(dummy) == source->type)) {
        return MakeError(ErrorKind::kInconsistentPatch,
                         "edge " + Describe(e) + " connects " +
                             source->type.ToString() + " into a " +
                             work_.DummyType(dummy).ToString() + " slot");
      }
      sink->operands[slot] = p.source;
      work_.DropDummy(dummy);
      ++report_.phase_counts.edge_insertions;
    }
    return absl::OkStatus();
  }

  absl::StatusOr<Function> Finish() {
    report_.dummies_created = work_.dummies_created();
    std::vector<std::string> remaining = work_.Dummies();
    report_.dummies_remaining = static_cast<int>(remaining.size());
    if (!remaining.empty()) {
      std::string list;
      for (const std::string& d : remaining) list += (list.empty() ? "" : ", ") + d;
      return MakeError(ErrorKind::kUnresolvedDummy, "dummies left: " + list);
    }
    Function f;
    f.name = patch_.target_function.name;
    for (const std::string& param : patch_.target_function.params) {
      IRECO_ASSIGN_OR_RETURN(std::string id, WorkingId(param));
      f.params.push_back(std::move(id));
    }
    IRECO_ASSIGN_OR_RETURN(f.return_node, WorkingId(patch_.target_function.return_node));
    f.nodes = work_.TakeNodes();
    for (const Node& node : f.nodes) {
      if (original_ids_.count(node.id) && !IsInserted(node.id)) {
        report_.reused_node_ids.insert(node.id);
      }
    }
    std::vector<Violation> violations = Validate(f);
    if (!violations.empty()) {
      return MakeError(ErrorKind::kInconsistentPatch,
                       "patched function is invalid: " + violations.front().ToString());
    }
    return f;
  }

  bool IsInserted(const std::string& id) const {
    for (const auto& [revised, working] : report_.inserted_node_ids) {
      if (working == id) return true;
    }
    return false;
  }

  WorkingFunction work_;
  const IrPatch& patch_;
  std::set<std::string> original_ids_;
  std::set<std::string> substituted_;
  ApplyReport report_;
};

}  // namespace

absl::StatusOr<std::string> ResolveReference(const std::string& id,
                                             const SubstitutionMap& map) {
  std::set<std::string> seen{id};
  std::string current = id;
  for (;;) {
    auto it = map.node_renames.find(current);
    if (it == map.node_renames.end() || it->second == current) return current;
    current = it->second;
    if (!seen.insert(current).second) {
      return MakeError(ErrorKind::kCycleDetected,
                       "rename chain from '" + id + "' revisits '" + current + "'");
    }
  }
}

std::string ApplyReportToJson(const ApplyReport& report) {
  nlohmann::json j;
  const PhaseCounts& c = report.phase_counts;
  j["phase_counts"] = {{"edge_deletions", c.edge_deletions},
                       {"node_deletions", c.node_deletions},
                       {"node_substitutions", c.node_substitutions},
                       {"node_insertions", c.node_insertions},
                       {"edge_insertions", c.edge_insertions},
                       {"edge_substitutions", c.edge_substitutions}};
  j["dummies_created"] = report.dummies_created;
  j["dummies_remaining"] = report.dummies_remaining;
  j["reused_node_ids"] = report.reused_node_ids;
  j["inserted_node_ids"] = report.inserted_node_ids;
  j["node_renames"] = report.substitutions.node_renames;
  nlohmann::json remaps = nlohmann::json::array();
  for (const auto& [key, slot] : report.substitutions.operand_index_remaps) {
    remaps.push_back({{"node", key.first}, {"from", key.second}, {"to", slot}});
  }
  j["operand_index_remaps"] = std::move(remaps);
  j["slots_populated_after_phase"] = report.slots_populated_after_phase;
  return j.dump(2) + "\n";
}

absl::StatusOr<ApplyReport> ParseApplyReport(std::string_view text) {
  using nlohmann::json;
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  auto error = [](const std::string& what) {
    return MakeError(ErrorKind::kSchemaError, "apply report: " + what);
  };
  if (j.is_discarded() || !j.is_object()) return error("not a JSON object");
  ApplyReport r;
  try {
    const json& c = j.at("phase_counts");
    r.phase_counts.edge_deletions = c.at("edge_deletions").get<int>();
    r.phase_counts.node_deletions = c.at("node_deletions").get<int>();
    r.phase_counts.node_substitutions = c.at("node_substitutions").get<int>();
    r.phase_counts.node_insertions = c.at("node_insertions").get<int>();
    r.phase_counts.edge_insertions = c.at("edge_insertions").get<int>();
    r.phase_counts.edge_substitutions = c.at("edge_substitutions").get<int>();
    r.dummies_created = j.at("dummies_created").get<int>();
    r.dummies_remaining = j.at("dummies_remaining").get<int>();
    r.reused_node_ids = j.at("reused_node_ids").get<std::set<std::string>>();
    r.inserted_node_ids =
        j.at("inserted_node_ids").get<std::map<std::string, std::string>>();
    r.substitutions.node_renames =
        j.at("node_renames").get<std::map<std::string, std::string>>();
    for (const json& remap : j.at("operand_index_remaps")) {
      r.substitutions.operand_index_remaps[{remap.at("node").get<std::string>(),
                                            remap.at("from").get<int>()}] =
          remap.at("to").get<int>();
    }
    r.slots_populated_after_phase =
        j.at("slots_populated_after_phase").get<std::vector<bool>>();
  } catch (const json::exception& e) {
    return error(e.what());
  }
  return r;
}

absl::StatusOr<ApplyResult> ApplyPatch(const Package& pkg, const IrPatch& patch,
                                       const ApplyOptions& options) {
  const std::string hash = IrHash(pkg);
  if (hash != patch.source_ir_hash && !options.force) {
    return MakeError(ErrorKind::kHashMismatch,
                     "package hash " + hash + " does not match patch source " +
                         patch.source_ir_hash);
  }
  const Function* top = pkg.TopFunction();
  if (top == nullptr) {
    return MakeError(ErrorKind::kInconsistentPatch, "package has no top function");
  }
  Applier applier(*top, patch);
  IRECO_ASSIGN_OR_RETURN(Function patched, applier.Run());
  ApplyResult result;
  result.package = pkg;
  for (Function& f : result.package.functions) {
    if (f.name == top->name) {
      f = std::move(patched);
      result.package.top = f.name;
      break;
    }
  }
  result.report = std::move(applier.report());
  return result;
}

}  // namespace ireco
