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

#ifndef IRECO_LSAP_H_
#define IRECO_LSAP_H_

#include <cstdint>
#include <vector>

namespace ireco {

using CostMatrix = std::vector<std::vector<int64_t>>;

struct Assignment {
  // row_to_col[r] is the column assigned to row r.
  std::vector<int> row_to_col;
  int64_t cost = 0;
};

// Kuhn-Munkres (shortest augmenting path with potentials), O(n^2 m) for an
// n x m matrix with n <= m. Every row is assigned a distinct column.
// Entries must be finite; use a large sentinel for forbidden pairs.
Assignment SolveAssignment(const CostMatrix& cost);

}  // namespace ireco

#endif  // IRECO_LSAP_H_
