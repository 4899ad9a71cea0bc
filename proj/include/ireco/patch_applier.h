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

#ifndef IRECO_PATCH_APPLIER_H_
#define IRECO_PATCH_APPLIER_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "ireco/ir.h"
#include "ireco/patch.h"

namespace ireco {

struct SubstitutionMap {
  // Revised id -> original id.
  std::map<std::string, std::string> node_renames;
  // (commutative sink id, revised operand position) -> working position.
  std::map<std::pair<std::string, int>, int> operand_index_remaps;
};

// Follows rename chains to a fixed point; unmapped ids resolve to themselves.
// Fails with kCycleDetected when the chain revisits an id.
absl::StatusOr<std::string> ResolveReference(const std::string& id,
                                             const SubstitutionMap& map);

struct PhaseCounts {
  int edge_deletions = 0;
  int node_deletions = 0;
  int node_substitutions = 0;
  int node_insertions = 0;
  int edge_insertions = 0;
  int edge_substitutions = 0;
};

struct ApplyReport {
  PhaseCounts phase_counts;
  int dummies_created = 0;
  int dummies_remaining = 0;
  // Original ids surviving into the result.
  std::set<std::string> reused_node_ids;
  // Revised id -> id given to the inserted node (differs on collisions).
  std::map<std::string, std::string> inserted_node_ids;
  SubstitutionMap substitutions;
  // Whether every operand slot was populated (by a real node or a dummy) at
  // the end of each of the four phases.
  std::vector<bool> slots_populated_after_phase;
};

std::string ApplyReportToJson(const ApplyReport& report);
// Inverse of ApplyReportToJson. Fails with kSchemaError.
absl::StatusOr<ApplyReport> ParseApplyReport(std::string_view text);

struct ApplyOptions {
  // Apply even if the package hash differs from patch.source_ir_hash.
  bool force = false;
};

struct ApplyResult {
  Package package;
  ApplyReport report;
};

// Applies patch to the top function of pkg on a private copy, in four phases
// regardless of entry order: edge deletions (freed slots get typed dummies),
// node deletions (which must have no users left), node substitutions and
// insertions (new nodes start with dummy operands), then edge insertions
// (each replaces one dummy). Errors: kHashMismatch, kUnknownTarget,
// kInvariantViolation, kUnresolvedDummy, kInconsistentPatch.
absl::StatusOr<ApplyResult> ApplyPatch(const Package& pkg, const IrPatch& patch,
                                       const ApplyOptions& options = {});

}  // namespace ireco

#endif  // IRECO_PATCH_APPLIER_H_
