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

#include "ireco/lsap.h"

#include <limits>

namespace ireco {

Assignment SolveAssignment(const CostMatrix& cost) {
  Assignment result;
  const int n = static_cast<int>(cost.size());
  if (n == 0) return result;
  const int m = static_cast<int>(cost[0].size());
  constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
  // 1-based arrays; column 0 is the virtual start of each augmenting path.
  std::vector<int64_t> u(n + 1, 0);
  std::vector<int64_t> v(m + 1, 0);
  std::vector<int> match(m + 1, 0);
  std::vector<int> way(m + 1, 0);
  for (int row = 1; row <= n; ++row) {
    match[0] = row;
    int col0 = 0;
    std::vector<int64_t> minv(m + 1, kInf);
    std::vector<bool> used(m + 1, false);
    do {
      used[col0] = true;
      const int i0 = match[col0];
      int64_t delta = kInf;
      int col1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const int64_t reduced = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (reduced < minv[j]) {
          minv[j] = reduced;
          way[j] = col0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          col1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const int col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  result.row_to_col.assign(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (match[j] != 0) result.row_to_col[match[j] - 1] = j - 1;
  }
  for (int i = 0; i < n; ++i) result.cost += cost[i][result.row_to_col[i]];
  return result;
}

}  // namespace ireco
