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

#ifndef IRECO_SCHEDULER_H_
#define IRECO_SCHEDULER_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ireco/ir.h"
#include "ireco/rational.h"

namespace ireco {

// Combinational delay per op, in picoseconds. params and literals are free.
struct DelayModel {
  std::map<OpKind, int64_t> per_op_delay;
  int64_t default_delay = 100;

  // 100 ps per op, 300 ps for umul.
  static DelayModel Default();
  int64_t Delay(OpKind op) const;
};

// {"<op>": ps, ..., "default": ps}. Missing ops use the default. Fails with
// kConfigError on unknown ops, negative delays, or non-zero delays for param
// or literal.
absl::StatusOr<DelayModel> ParseDelayModel(std::string_view text);
std::string DelayModelToJson(const DelayModel& dm);

struct PipelineSchedule {
  int64_t clock_period_ps = 0;
  int num_stages = 1;
  std::map<std::string, int> cycle_of;

  friend bool operator==(const PipelineSchedule&, const PipelineSchedule&) = default;
};

// {"clock_period_ps": P, "num_stages": S, "cycle_of": {"<id>": stage}}.
std::string ScheduleToJson(const PipelineSchedule& s);
absl::StatusOr<PipelineSchedule> ParseSchedule(std::string_view text);

// ASAP list scheduling in topological order: each node goes to the earliest
// stage at or after its operands' stages where its arrival time (own delay
// plus the latest same-stage operand arrival) fits the period. Pinned nodes
// go exactly to their pin. Since ASAP placement is earliest per node, a pin
// set is rejected only if no schedule satisfies it.
// Errors: kPeriodTooSmall (a single op exceeds the period), kInfeasible (a
// pin cannot be honored), kUnknownTarget (pin names no node).
absl::StatusOr<PipelineSchedule> Schedule(const Function& f,
                                          int64_t clock_period_ps,
                                          const DelayModel& dm,
                                          const std::map<std::string, int>& pins = {});

// Checks causality (operands never in a later stage) and that the longest
// same-stage path fits the period. Fails with kInfeasible naming the
// offending node.
absl::Status CheckSchedule(const Function& f, const PipelineSchedule& s,
                           const DelayModel& dm);

struct ConstrainReport {
  // Pinned to their original stage, in the order they were accepted.
  std::vector<std::string> constrained;
  std::vector<std::string> infeasible;
  int skipped_literal = 0;
  int skipped_infeasible = 0;
  int skipped_new = 0;
  int skipped_removed = 0;
  Rational preservation_ratio;
};

// |constrained| / (|constrained| + skipped_infeasible); 1 when both are 0.
Rational PreservationRatio(const ConstrainReport& report);

std::string ConstrainReportToJson(const ConstrainReport& report);
absl::StatusOr<ConstrainReport> ParseConstrainReport(std::string_view text);

struct ConstrainResult {
  PipelineSchedule schedule;
  ConstrainReport report;
};

// Greedily pins the nodes of the patched function to their original stages,
// visiting the original schedule by ascending stage then id. Nodes in
// inserted_ids or without an original placement are new, nodes missing from
// patched are removed, literals are skipped; every other node is pinned
// tentatively and kept only if a full reschedule still succeeds.
absl::StatusOr<ConstrainResult> ConstrainSchedule(
    const Function& patched, const PipelineSchedule& original,
    const std::set<std::string>& inserted_ids, int64_t clock_period_ps,
    const DelayModel& dm);

}  // namespace ireco

#endif  // IRECO_SCHEDULER_H_
