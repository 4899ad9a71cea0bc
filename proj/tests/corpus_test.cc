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

#include <set>

#include "gtest/gtest.h"
#include "ireco/corpus.h"
#include "ireco/ir_parser.h"
#include "ireco/ir_printer.h"
#include "ireco/ir_validate.h"

namespace ireco {
namespace {

int64_t ParamBits(const Function& f) {
  int64_t total = 0;
  for (const DataType& t : f.ParamTypes()) total += t.width;
  return total;
}

TEST(CorpusTest, PairsValidateAndReparse) {
  for (uint64_t seed = 0; seed < 300; ++seed) {
    CorpusPair pair = GenerateCorpusPair(seed);
    for (const Package* pkg : {&pair.original, &pair.revised}) {
      ASSERT_TRUE(Validate(*pkg).empty()) << "seed " << seed << "\n" << PrintIr(*pkg);
      absl::StatusOr<Package> back = ParseIr(PrintIr(*pkg));
      ASSERT_TRUE(back.ok()) << back.status();
      EXPECT_TRUE(StructurallyEqual(*back, *pkg));
      EXPECT_LE(ParamBits(*pkg->TopFunction()), 16);
    }
    EXPECT_FALSE(pair.mutations.empty());
    EXPECT_LE(pair.mutations.size(), 3u);
  }
}

TEST(CorpusTest, DeterministicInSeed) {
  for (uint64_t seed : {0u, 7u, 99u}) {
    CorpusPair a = GenerateCorpusPair(seed);
    CorpusPair b = GenerateCorpusPair(seed);
    EXPECT_EQ(PrintIr(a.original), PrintIr(b.original));
    EXPECT_EQ(PrintIr(a.revised), PrintIr(b.revised));
    EXPECT_EQ(a.mutations, b.mutations);
  }
  EXPECT_NE(PrintIr(GenerateCorpusPair(1).original), PrintIr(GenerateCorpusPair(2).original));
}

TEST(CorpusTest, RespectsSizeOptions) {
  CorpusOptions options;
  options.min_ops = 20;
  options.max_ops = 20;
  Function f = RandomFunction(3, options);
  int ops = 0;
  for (const Node& n : f.nodes) ops += n.op != OpKind::kParam;
  EXPECT_LE(ops, 20);
  EXPECT_GE(ops, 1);
}

TEST(CorpusTest, EveryMutationKindOccurs) {
  std::set<Mutation> seen;
  for (uint64_t seed = 0; seed < 300; ++seed) {
    for (Mutation m : GenerateCorpusPair(seed).mutations) seen.insert(m);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(CorpusTest, EliminateDeadNodesKeepsParams) {
  Package pkg = *ParseIrUnvalidated(R"(fn f(x: bits[4], y: bits[4]) -> bits[4] {
  dead: bits[4] = not(y)
  ret r: bits[4] = not(x)
})");
  Function f = *pkg.TopFunction();
  EliminateDeadNodes(f);
  EXPECT_EQ(f.FindNode("dead"), nullptr);
  EXPECT_NE(f.FindNode("y"), nullptr);
  EXPECT_EQ(f.nodes.size(), 3u);
}

}  // namespace
}  // namespace ireco
