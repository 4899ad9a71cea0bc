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

#include "ireco/metrics.h"

#include <cstdio>

#include "ireco/errors.h"
#include "json.hpp"

namespace ireco {
namespace {

using nlohmann::json;

std::string Decimal(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.10g", value);
  return buffer;
}

json RationalJson(const Rational& r) {
  return json{{"num", r.num}, {"den", r.den}, {"value", r.ToDouble()}};
}

void AppendLine(std::string& out, const std::string& key, const std::string& value) {
  out += key;
  out += '=';
  out += value;
  out += '\n';
}

}  // namespace

absl::StatusOr<EcoMetrics> MetricsFromCounts(int64_t n_orig, int64_t e_orig,
                                             int64_t n_add, int64_t n_del,
                                             int64_t e_add, int64_t e_del) {
  if (n_orig < 0 || e_orig < 0 || n_add < 0 || n_del < 0 || e_add < 0 || e_del < 0) {
    return MakeError(ErrorKind::kInconsistentPatch, "counts must be non-negative");
  }
  if (n_del > n_orig || e_del > e_orig) {
    return MakeError(ErrorKind::kInconsistentPatch,
                     "patch deletes more nodes or edges than the original has");
  }
  EcoMetrics m;
  m.n_orig = n_orig;
  m.e_orig = e_orig;
  m.n_add = n_add;
  m.n_del = n_del;
  m.e_add = e_add;
  m.e_del = e_del;
  m.reuse = (n_orig - n_del) + (e_orig - e_del);
  m.change = n_add + n_del + e_add + e_del;
  m.reuse_ratio = Rational::Of(m.reuse, m.reuse + m.change);
  m.change_ratio = m.reuse_ratio.Complement();
  return m;
}

absl::StatusOr<EcoMetrics> ComputeEcoMetrics(const IrPatch& patch,
                                             const IrGraph& original) {
  int64_t counts[2][2] = {{0, 0}, {0, 0}};  // [node|edge][add|del]
  for (const EditPathEntry& e : patch.edit_paths) {
    if (e.action == EntryAction::kSubstitute) continue;
    counts[e.kind == EntryKind::kNode ? 0 : 1][e.action == EntryAction::kInsert ? 0 : 1]++;
  }
  return MetricsFromCounts(original.node_count(), original.edge_count(),
                           counts[0][0], counts[0][1], counts[1][0], counts[1][1]);
}

std::string RenderReport(const EcoMetrics& m, const ConstrainReport* constrain,
                         const ApplyReport* apply, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    json j;
    j["metrics"] = {{"n_orig", m.n_orig},   {"e_orig", m.e_orig},
                    {"n_add", m.n_add},     {"n_del", m.n_del},
                    {"e_add", m.e_add},     {"e_del", m.e_del},
                    {"reuse", m.reuse},     {"change", m.change},
                    {"reuse_ratio", RationalJson(m.reuse_ratio)},
                    {"change_ratio", RationalJson(m.change_ratio)}};
    if (constrain != nullptr) {
      j["constrain"] = json::parse(ConstrainReportToJson(*constrain));
    }
    if (apply != nullptr) j["apply"] = json::parse(ApplyReportToJson(*apply));
    return j.dump(2) + "\n";
  }
  std::string out;
  AppendLine(out, "n_orig", std::to_string(m.n_orig));
  AppendLine(out, "e_orig", std::to_string(m.e_orig));
  AppendLine(out, "n_add", std::to_string(m.n_add));
  AppendLine(out, "n_del", std::to_string(m.n_del));
  AppendLine(out, "e_add", std::to_string(m.e_add));
  AppendLine(out, "e_del", std::to_string(m.e_del));
  AppendLine(out, "reuse", std::to_string(m.reuse));
  AppendLine(out, "change", std::to_string(m.change));
  AppendLine(out, "reuse_ratio", Decimal(m.reuse_ratio.ToDouble()));
  AppendLine(out, "change_ratio", Decimal(m.change_ratio.ToDouble()));
  if (constrain != nullptr) {
    AppendLine(out, "constrained", std::to_string(constrain->constrained.size()));
    AppendLine(out, "skipped_infeasible", std::to_string(constrain->skipped_infeasible));
    AppendLine(out, "skipped_literal", std::to_string(constrain->skipped_literal));
    AppendLine(out, "skipped_new", std::to_string(constrain->skipped_new));
    AppendLine(out, "skipped_removed", std::to_string(constrain->skipped_removed));
    AppendLine(out, "preservation_ratio",
               Decimal(constrain->preservation_ratio.ToDouble()));
  }
  if (apply != nullptr) {
    const PhaseCounts& c = apply->phase_counts;
    AppendLine(out, "apply.edge_deletions", std::to_string(c.edge_deletions));
    AppendLine(out, "apply.node_deletions", std::to_string(c.node_deletions));
    AppendLine(out, "apply.node_substitutions", std::to_string(c.node_substitutions));
    AppendLine(out, "apply.node_insertions", std::to_string(c.node_insertions));
    AppendLine(out, "apply.edge_insertions", std::to_string(c.edge_insertions));
    AppendLine(out, "apply.edge_substitutions", std::to_string(c.edge_substitutions));
    AppendLine(out, "apply.dummies_created", std::to_string(apply->dummies_created));
    AppendLine(out, "apply.dummies_remaining", std::to_string(apply->dummies_remaining));
  }
  return out;
}

absl::StatusOr<EcoMetrics> ParseMetricsJson(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object() || !j.contains("metrics") ||
      !j["metrics"].is_object()) {
    return MakeError(ErrorKind::kSchemaError, "report has no metrics object");
  }
  const json& m = j["metrics"];
  int64_t values[6];
  const char* keys[6] = {"n_orig", "e_orig", "n_add", "n_del", "e_add", "e_del"};
  for (int i = 0; i < 6; ++i) {
    if (!m.contains(keys[i]) || !m[keys[i]].is_number_integer()) {
      return MakeError(ErrorKind::kSchemaError,
                       std::string("metrics.") + keys[i] + " must be an integer");
    }
    values[i] = m[keys[i]].get<int64_t>();
  }
  absl::StatusOr<EcoMetrics> out = MetricsFromCounts(
      values[0], values[1], values[2], values[3], values[4], values[5]);
  if (!out.ok()) return MakeError(ErrorKind::kSchemaError, std::string(out.status().message()));
  return out;
}

}  // namespace ireco
