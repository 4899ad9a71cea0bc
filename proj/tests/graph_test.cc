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

#include <sstream>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "ireco/errors.h"
#include "ireco/graph.h"
#include "ireco/isomorphism.h"
#include "test_util.h"

namespace ireco {
namespace {

using ::ireco::testing::LoadTestdataIr;
using ::ireco::testing::ParseOrDie;
using ::ireco::testing::TopGraph;
using ::testing::HasSubstr;
using ::testing::Not;

const Edge& EdgeOf(const IrGraph& g, const std::string& src, const std::string& sink,
                   int occurrence = 0) {
  return g.edges()[*g.FindEdge({src, sink, occurrence})];
}

TEST(GraphTest, Fig1aShape) {
  IrGraph g = TopGraph(LoadTestdataIr("fig1a.ir"));
  EXPECT_EQ(g.node_count(), 5);
  EXPECT_EQ(g.edge_count(), 4);
  EXPECT_EQ(g.return_node, "umul.2");
  EXPECT_EQ(g.params, (std::vector<std::string>{"a", "b", "c"}));
  const GraphNode& umul = g.nodes()[*g.NodeIndex("umul.2")];
  EXPECT_EQ(umul.attr.op, "umul");
  EXPECT_EQ(umul.attr.dtype_str, "bits[8]");
  EXPECT_EQ(umul.attr.operand_dtype_str,
            (std::vector<std::string>{"bits[8]", "bits[8]"}));
  // Commutative sinks carry no index attribute.
  EXPECT_FALSE(EdgeOf(g, "a", "add.1").attr.index.has_value());
  EXPECT_FALSE(EdgeOf(g, "c", "umul.2").attr.index.has_value());
}

TEST(GraphTest, NonCommutativeSinksCarryIndex) {
  IrGraph g = TopGraph(LoadTestdataIr("fig1b.ir"));
  EXPECT_EQ(EdgeOf(g, "a", "sub.3").attr.index, 0);
  EXPECT_EQ(EdgeOf(g, "umul.2", "sub.3").attr.index, 1);
  EXPECT_EQ(*EdgeIndexOf(EdgeOf(g, "umul.2", "sub.3"), g), 1);
  EXPECT_EQ(*EdgeIndexOf(EdgeOf(g, "b", "umul.2"), g), std::nullopt);
  Edge bogus = EdgeOf(g, "a", "sub.3");
  bogus.sink = *g.NodeIndex("umul.2");
  EXPECT_TRUE(HasErrorKind(EdgeIndexOf(bogus, g).status(), ErrorKind::kUnknownEdge));
}

TEST(GraphTest, ParallelEdgesGetOccurrences) {
  IrGraph g = TopGraph(ParseOrDie(R"(fn f(x: bits[4]) -> bits[4] {
  ret r: bits[4] = sub(x, x)
})"));
  ASSERT_EQ(g.edge_count(), 2);
  EXPECT_EQ(EdgeOf(g, "x", "r", 0).attr.index, 0);
  EXPECT_EQ(EdgeOf(g, "x", "r", 1).attr.index, 1);
  EXPECT_FALSE(g.FindEdge({"x", "r", 2}).has_value());
}

TEST(GraphTest, EdgeAttrsRecordEndpointTypes) {
  IrGraph g = TopGraph(ParseOrDie(R"(fn f(x: bits[4]) -> bits[8] {
  ret r: bits[8] = zero_ext(x, new_bit_count=8)
})"));
  const Edge& e = EdgeOf(g, "x", "r");
  EXPECT_EQ(e.attr.source_data_type, "bits[4]");
  EXPECT_EQ(e.attr.sink_data_type, "bits[8]");
  EXPECT_EQ(g.nodes()[e.sink].attr.unique_attrs.at("new_bit_count"), "8");
}

TEST(GraphTest, DotHasOneLinePerNodeAndHighlights) {
  IrGraph g = TopGraph(LoadTestdataIr("fig1b.ir"));
  const std::string plain = ToDot(g);
  int node_lines = 0;
  std::istringstream lines(plain);
  for (std::string line; std::getline(lines, line);) {
    if (line.find("[label=") != std::string::npos && line.find("->") == std::string::npos) {
      ++node_lines;
    }
  }
  EXPECT_EQ(node_lines, 5);
  EXPECT_THAT(plain, Not(HasSubstr("filled")));
  DotHighlight h;
  h.nodes.insert("sub.3");
  h.edges.insert({"a", "sub.3", 0});
  const std::string marked = ToDot(g, &h);
  EXPECT_THAT(marked, HasSubstr("fillcolor=gray"));
  EXPECT_THAT(marked, HasSubstr("style=bold"));
}

TEST(IsomorphismTest, IgnoresIdsButNotAttributes) {
  IrGraph a = TopGraph(ParseOrDie(R"(fn f(x: bits[4], y: bits[4]) -> bits[4] {
  s: bits[4] = sub(x, y)
  ret r: bits[4] = add(s, x)
})"));
  IrGraph renamed = TopGraph(ParseOrDie(R"(fn g(p: bits[4], q: bits[4]) -> bits[4] {
  t: bits[4] = sub(p, q)
  ret u: bits[4] = add(p, t)
})"));
  IrGraph swapped = TopGraph(ParseOrDie(R"(fn f(x: bits[4], y: bits[4]) -> bits[4] {
  s: bits[4] = sub(y, x)
  ret r: bits[4] = add(s, y)
})"));
  IrGraph different = TopGraph(ParseOrDie(R"(fn f(x: bits[4], y: bits[4]) -> bits[4] {
  s: bits[4] = sub(x, y)
  ret r: bits[4] = add(s, y)
})"));
  EXPECT_TRUE(IsAttributeIsomorphic(a, renamed));
  // Params are interchangeable nodes, so swapping their roles everywhere is
  // an isomorphism.
  EXPECT_TRUE(IsAttributeIsomorphic(a, swapped));
  EXPECT_FALSE(IsAttributeIsomorphic(a, different));
}

TEST(IsomorphismTest, DistinguishesParallelEdgeCounts) {
  IrGraph a = TopGraph(ParseOrDie(R"(fn f(x: bits[4], y: bits[4]) -> bits[4] {
  ret r: bits[4] = and(x, x, y)
})"));
  IrGraph b = TopGraph(ParseOrDie(R"(fn f(x: bits[4], y: bits[4]) -> bits[4] {
  ret r: bits[4] = and(x, y, y)
})"));
  IrGraph c = TopGraph(ParseOrDie(R"(fn f(x: bits[4], y: bits[4]) -> bits[4] {
  ret r: bits[4] = and(y, x, y)
})"));
  EXPECT_TRUE(IsAttributeIsomorphic(a, b));
  EXPECT_TRUE(IsAttributeIsomorphic(b, c));
  EXPECT_TRUE(AttributeIdentical(b, c));
  EXPECT_FALSE(AttributeIdentical(a, b));
}

TEST(IsomorphismTest, RejectsSizeMismatch) {
  IrGraph a = TopGraph(LoadTestdataIr("fig1a.ir"));
  IrGraph b = TopGraph(LoadTestdataIr("fig1b.ir"));
  EXPECT_FALSE(IsAttributeIsomorphic(a, b));
  EXPECT_TRUE(IsAttributeIsomorphic(a, a));
}

}  // namespace
}  // namespace ireco
