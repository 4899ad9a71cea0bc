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

#include "ireco/scheduler.h"

#include <algorithm>
#include <unordered_map>

#include "ireco/errors.h"
#include "ireco/ir_validate.h"
#include "ireco/status_macros.h"
#include "json.hpp"

namespace ireco {
namespace {

using nlohmann::json;

bool IsFree(OpKind op) { return op == OpKind::kParam || op == OpKind::kLiteral; }

absl::StatusOr<json> ParseJsonObject(std::string_view text, ErrorKind kind,
                                     const char* what) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    return MakeError(kind, std::string(what) + " must be a JSON object");
  }
  return j;
}

absl::StatusOr<std::vector<std::string>> StringArray(const json& j,
                                                     const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array()) {
    return MakeError(ErrorKind::kSchemaError,
                     std::string("constrain report needs array '") + key + "'");
  }
  std::vector<std::string> out;
  for (const json& v : *it) {
    if (!v.is_string()) {
      return MakeError(ErrorKind::kSchemaError,
                       std::string("'") + key + "' must contain strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

absl::StatusOr<int> Count(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer() || it->get<int64_t>() < 0) {
    return MakeError(ErrorKind::kSchemaError,
                     std::string("constrain report needs count '") + key + "'");
  }
  return it->get<int>();
}

}  // namespace

DelayModel DelayModel::Default() {
  DelayModel dm;
  dm.per_op_delay[OpKind::kUMul] = 300;
  return dm;
}

int64_t DelayModel::Delay(OpKind op) const {
  if (IsFree(op)) return 0;
  auto it = per_op_delay.find(op);
  return it == per_op_delay.end() ? default_delay : it->second;
}

absl::StatusOr<DelayModel> ParseDelayModel(std::string_view text) {
  IRECO_ASSIGN_OR_RETURN(json j,
                         ParseJsonObject(text, ErrorKind::kConfigError, "delay model"));
  DelayModel dm;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it->is_number_integer() || it->get<int64_t>() < 0) {
      return MakeError(ErrorKind::kConfigError,
                       "delay for '" + it.key() + "' must be a non-negative integer");
    }
    const int64_t delay = it->get<int64_t>();
    if (it.key() == "default") {
      dm.default_delay = delay;
      continue;
    }
    std::optional<OpKind> op = OpKindFromName(it.key());
    if (!op.has_value()) {
      return MakeError(ErrorKind::kConfigError, "unknown op '" + it.key() + "'");
    }
    if (IsFree(*op) && delay != 0) {
      return MakeError(ErrorKind::kConfigError,
                       "delay for '" + it.key() + "' must be 0");
    }
    dm.per_op_delay[*op] = delay;
  }
  return dm;
}

std::string DelayModelToJson(const DelayModel& dm) {
  json j;
  j["default"] = dm.default_delay;
  for (const auto& [op, delay] : dm.per_op_delay) j[std::string(OpKindName(op))] = delay;
  return j.dump(2) + "\n";
}

std::string ScheduleToJson(const PipelineSchedule& s) {
  json j;
  j["clock_period_ps"] = s.clock_period_ps;
  j["num_stages"] = s.num_stages;
  j["cycle_of"] = s.cycle_of;
  return j.dump(2) + "\n";
}

absl::StatusOr<PipelineSchedule> ParseSchedule(std::string_view text) {
  IRECO_ASSIGN_OR_RETURN(json j,
                         ParseJsonObject(text, ErrorKind::kSchemaError, "schedule"));
  PipelineSchedule s;
  auto period = j.find("clock_period_ps");
  auto stages = j.find("num_stages");
  auto cycles = j.find("cycle_of");
  if (period == j.end() || !period->is_number_integer() || stages == j.end() ||
      !stages->is_number_integer() || cycles == j.end() || !cycles->is_object()) {
    return MakeError(ErrorKind::kSchemaError,
                     "schedule needs clock_period_ps, num_stages and cycle_of");
  }
  s.clock_period_ps = period->get<int64_t>();
  s.num_stages = stages->get<int>();
  if (s.num_stages < 1) {
    return MakeError(ErrorKind::kSchemaError, "num_stages must be positive");
  }
  for (auto it = cycles->begin(); it != cycles->end(); ++it) {
    if (!it->is_number_integer() || it->get<int64_t>() < 0 ||
        it->get<int64_t>() >= s.num_stages) {
      return MakeError(ErrorKind::kSchemaError,
                       "stage of '" + it.key() + "' is out of range");
    }
    s.cycle_of[it.key()] = it->get<int>();
  }
  return s;
}

absl::StatusOr<PipelineSchedule> Schedule(const Function& f,
                                          int64_t clock_period_ps,
                                          const DelayModel& dm,
                                          const std::map<std::string, int>& pins) {
  for (const auto& [id, stage] : pins) {
    if (f.FindNode(id) == nullptr) {
      return MakeError(ErrorKind::kUnknownTarget, "pinned node '" + id + "' not found");
    }
    if (stage < 0) {
      return MakeError(ErrorKind::kInfeasible, "pin of '" + id + "' is negative");
    }
  }
  for (const Node& node : f.nodes) {
    if (dm.Delay(node.op) > clock_period_ps) {
      return MakeError(ErrorKind::kPeriodTooSmall,
                       "node '" + node.id + "' needs " +
                           std::to_string(dm.Delay(node.op)) + " ps > period " +
                           std::to_string(clock_period_ps) + " ps");
    }
  }
  std::vector<std::string> order = TopologicalOrder(f);
  std::unordered_map<std::string, int> stage_of;
  std::unordered_map<std::string, int64_t> arrival;
  PipelineSchedule s;
  s.clock_period_ps = clock_period_ps;
  int last_stage = 0;
  for (const std::string& id : order) {
    const Node& node = *f.FindNode(id);
    const int64_t delay = dm.Delay(node.op);
    int earliest = 0;
    for (const std::string& operand : node.operands) {
      earliest = std::max(earliest, stage_of.at(operand));
    }
    auto arrival_at = [&](int stage) {
      int64_t start = 0;
      for (const std::string& operand : node.operands) {
        if (stage_of.at(operand) == stage) start = std::max(start, arrival.at(operand));
      }
      return start + delay;
    };
    int stage = earliest;
    int64_t t = arrival_at(earliest);
    auto pin = pins.find(id);
    if (pin != pins.end()) {
      if (pin->second < earliest) {
        return MakeError(ErrorKind::kInfeasible,
                         "node '" + id + "' pinned to stage " +
                             std::to_string(pin->second) +
                             " but its operands finish in stage " +
                             std::to_string(earliest));
      }
      stage = pin->second;
      if (stage > earliest) t = delay;
      if (t > clock_period_ps) {
        return MakeError(ErrorKind::kInfeasible,
                         "node '" + id + "' pinned to stage " +
                             std::to_string(stage) + " would arrive at " +
                             std::to_string(t) + " ps");
      }
    } else if (t > clock_period_ps) {
      stage = earliest + 1;
      t = delay;
    }
    stage_of[id] = stage;
    arrival[id] = t;
    s.cycle_of[id] = stage;
    last_stage = std::max(last_stage, stage);
  }
  s.num_stages = last_stage + 1;
  return s;
}

absl::Status CheckSchedule(const Function& f, const PipelineSchedule& s,
                           const DelayModel& dm) {
  std::unordered_map<std::string, int64_t> arrival;
  for (const std::string& id : TopologicalOrder(f)) {
    const Node& node = *f.FindNode(id);
    auto stage = s.cycle_of.find(id);
    if (stage == s.cycle_of.end()) {
      return MakeError(ErrorKind::kInfeasible, "node '" + id + "' is unscheduled");
    }
    if (stage->second >= s.num_stages) {
      return MakeError(ErrorKind::kInfeasible,
                       "node '" + id + "' is beyond the last stage");
    }
    int64_t start = 0;
    for (const std::string& operand : node.operands) {
      const int operand_stage = s.cycle_of.at(operand);
      if (operand_stage > stage->second) {
        return MakeError(ErrorKind::kInfeasible,
                         "node '" + id + "' is scheduled before its operand '" +
                             operand + "'");
      }
      if (operand_stage == stage->second) start = std::max(start, arrival.at(operand));
    }
    arrival[id] = start + dm.Delay(node.op);
    if (arrival[id] > s.clock_period_ps) {
      return MakeError(ErrorKind::kInfeasible,
                       "stage " + std::to_string(stage->second) +
                           " path through '" + id + "' exceeds the period");
    }
  }
  return absl::OkStatus();
}

Rational PreservationRatio(const ConstrainReport& report) {
  const int64_t kept = static_cast<int64_t>(report.constrained.size());
  return Rational::Of(kept, kept + report.skipped_infeasible);
}

std::string ConstrainReportToJson(const ConstrainReport& report) {
  json j;
  j["constrained"] = report.constrained;
  j["infeasible"] = report.infeasible;
  j["skipped_literal"] = report.skipped_literal;
  j["skipped_infeasible"] = report.skipped_infeasible;
  j["skipped_new"] = report.skipped_new;
  j["skipped_removed"] = report.skipped_removed;
  j["preservation_ratio"] = {{"num", report.preservation_ratio.num},
                             {"den", report.preservation_ratio.den},
                             {"value", report.preservation_ratio.ToDouble()}};
  return j.dump(2) + "\n";
}

absl::StatusOr<ConstrainReport> ParseConstrainReport(std::string_view text) {
  IRECO_ASSIGN_OR_RETURN(
      json j, ParseJsonObject(text, ErrorKind::kSchemaError, "constrain report"));
  ConstrainReport r;
  IRECO_ASSIGN_OR_RETURN(r.constrained, StringArray(j, "constrained"));
  IRECO_ASSIGN_OR_RETURN(r.infeasible, StringArray(j, "infeasible"));
  IRECO_ASSIGN_OR_RETURN(r.skipped_literal, Count(j, "skipped_literal"));
  IRECO_ASSIGN_OR_RETURN(r.skipped_infeasible, Count(j, "skipped_infeasible"));
  IRECO_ASSIGN_OR_RETURN(r.skipped_new, Count(j, "skipped_new"));
  IRECO_ASSIGN_OR_RETURN(r.skipped_removed, Count(j, "skipped_removed"));
  r.preservation_ratio = PreservationRatio(r);
  return r;
}

absl::StatusOr<ConstrainResult> ConstrainSchedule(
    const Function& patched, const PipelineSchedule& original,
    const std::set<std::string>& inserted_ids, int64_t clock_period_ps,
    const DelayModel& dm) {
  ConstrainResult result;
  ConstrainReport& report = result.report;
  // Fails fast on a period no schedule can meet.
  IRECO_ASSIGN_OR_RETURN(result.schedule, Schedule(patched, clock_period_ps, dm));

  std::vector<std::pair<int, std::string>> visit;
  for (const auto& [id, stage] : original.cycle_of) {
    if (inserted_ids.count(id)) continue;
    visit.emplace_back(stage, id);
  }
  std::sort(visit.begin(), visit.end());
  for (const Node& node : patched.nodes) {
    if (inserted_ids.count(node.id) || !original.cycle_of.count(node.id)) {
      ++report.skipped_new;
    }
  }
  std::map<std::string, int> pins;
  for (const auto& [stage, id] : visit) {
    const Node* node = patched.FindNode(id);
    if (node == nullptr) {
      ++report.skipped_removed;
      continue;
    }
    if (node->op == OpKind::kLiteral) {
      ++report.skipped_literal;
      continue;
    }
    pins[id] = stage;
    absl::StatusOr<PipelineSchedule> trial =
        Schedule(patched, clock_period_ps, dm, pins);
    if (trial.ok()) {
      report.constrained.push_back(id);
      result.schedule = *std::move(trial);
    } else if (HasErrorKind(trial.status(), ErrorKind::kInfeasible)) {
      pins.erase(id);
      report.infeasible.push_back(id);
      ++report.skipped_infeasible;
    } else {
      return trial.status();
    }
  }
  report.preservation_ratio = PreservationRatio(report);
  return result;
}

}  // namespace ireco
