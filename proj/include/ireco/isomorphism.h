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

#ifndef IRECO_ISOMORPHISM_H_
#define IRECO_ISOMORPHISM_H_

#include <optional>
#include <vector>

#include "ireco/graph.h"

namespace ireco {

// Finds a bijection a-node -> b-node preserving node attributes and, for
// every ordered node pair, the multiset of edge attributes between them.
// Backtracking with degree/label refinement; intended for graphs of up to a
// few dozen nodes.
std::optional<std::vector<int>> FindIsomorphism(const IrGraph& a,
                                                const IrGraph& b);

inline bool IsAttributeIsomorphic(const IrGraph& a, const IrGraph& b) {
  return FindIsomorphism(a, b).has_value();
}

}  // namespace ireco

#endif  // IRECO_ISOMORPHISM_H_
