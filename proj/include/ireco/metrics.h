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

#ifndef IRECO_METRICS_H_
#define IRECO_METRICS_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "ireco/graph.h"
#include "ireco/patch.h"
#include "ireco/patch_applier.h"
#include "ireco/rational.h"
#include "ireco/scheduler.h"

namespace ireco {

struct EcoMetrics {
  int64_t n_orig = 0;
  int64_t e_orig = 0;
  int64_t n_add = 0;
  int64_t n_del = 0;
  int64_t e_add = 0;
  int64_t e_del = 0;
  // Surviving nodes and edges, substituted ones included.
  int64_t reuse = 0;
  int64_t change = 0;
  Rational reuse_ratio;
  Rational change_ratio;

  friend bool operator==(const EcoMetrics&, const EcoMetrics&) = default;
};

// reuse = (n_orig - n_del) + (e_orig - e_del), change = the four edit counts,
// reuse_ratio = reuse / (reuse + change), change_ratio = 1 - reuse_ratio.
// Fails with kInconsistentPatch if deletions exceed the original counts.
absl::StatusOr<EcoMetrics> MetricsFromCounts(int64_t n_orig, int64_t e_orig,
                                             int64_t n_add, int64_t n_del,
                                             int64_t e_add, int64_t e_del);

// Counts come from the patch entries and the original graph size only.
absl::StatusOr<EcoMetrics> ComputeEcoMetrics(const IrPatch& patch,
                                             const IrGraph& original);

enum class ReportFormat { kText, kJson };

// Deterministic report of the metrics and, when given, the constraining and
// application statistics. Text is one key=value per line with ratios in
// 10 significant digits; JSON carries ratios as {num, den, value}.
std::string RenderReport(const EcoMetrics& m, const ConstrainReport* constrain,
                         const ApplyReport* apply, ReportFormat format);

// Reads the "metrics" object of a JSON report back. Fails with kSchemaError.
absl::StatusOr<EcoMetrics> ParseMetricsJson(std::string_view text);

}  // namespace ireco

#endif  // IRECO_METRICS_H_
