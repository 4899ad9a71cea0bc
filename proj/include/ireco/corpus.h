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

#ifndef IRECO_CORPUS_H_
#define IRECO_CORPUS_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "ireco/ir.h"

namespace ireco {

struct CorpusOptions {
  int min_ops = 3;
  int max_ops = 10;
  int max_params = 3;
  // Bound on the summed param widths, so pairs stay exhaustively checkable.
  int max_param_bits = 16;
  int min_mutations = 1;
  int max_mutations = 3;
};

enum class Mutation {
  kLiteralEdit,
  kOpSwap,
  kSubgraphInsert,
  kSubgraphDelete,
  kWidthChange,
  // Semantics preserving.
  kCommutativeSwap,
  kRename,
};

std::string_view MutationName(Mutation m);

// Removes non-param nodes that do not reach the return node.
void EliminateDeadNodes(Function& f);

// A random valid function with small widths. Deterministic in seed.
Function RandomFunction(uint64_t seed, const CorpusOptions& options = {});

struct CorpusPair {
  Package original;
  Package revised;
  std::vector<Mutation> mutations;
};

// original is RandomFunction(seed); revised applies a few random mutations
// to it. Both validate.
CorpusPair GenerateCorpusPair(uint64_t seed, const CorpusOptions& options = {});

}  // namespace ireco

#endif  // IRECO_CORPUS_H_
