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

#ifndef IRECO_TESTS_SUPPORT_BRUTE_FORCE_GED_H_
#define IRECO_TESTS_SUPPORT_BRUTE_FORCE_GED_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "ireco/graph.h"

namespace ireco::testing {

inline constexpr int kBruteForceNodeLimit = 12;

struct BruteForceResult {
  int64_t cost = 0;
  // A minimum-cost mapping (g1 node -> g2 node or -1).
  std::vector<int> mapping;
  int64_t mappings_tried = 0;
};

// Enumerates every injective partial node mapping between g1 and g2 and
// prices each one directly: unit cost per deleted/inserted node, infeasible
// for attribute-mismatched pairs, and per ordered node pair the multiset
// difference of edge attributes. Fails with kSizeLimitExceeded when the two
// graphs have more than kBruteForceNodeLimit nodes together.
absl::StatusOr<BruteForceResult> BruteForceGed(const IrGraph& g1, const IrGraph& g2);

// Prices one complete mapping the same way.
int64_t MappingCost(const IrGraph& g1, const IrGraph& g2, const std::vector<int>& mapping);

}  // namespace ireco::testing

#endif  // IRECO_TESTS_SUPPORT_BRUTE_FORCE_GED_H_
