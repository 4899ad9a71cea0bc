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

#ifndef IRECO_GRAPH_H_
#define IRECO_GRAPH_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "ireco/ir.h"

namespace ireco {

// Cost attributes of a node. Two nodes may substitute for each other only if
// every field is equal.
struct NodeAttr {
  std::string op;
  std::string dtype_str;
  std::vector<std::string> operand_dtype_str;
  std::map<std::string, std::string> unique_attrs;

  friend bool operator==(const NodeAttr&, const NodeAttr&) = default;
  friend auto operator<=>(const NodeAttr&, const NodeAttr&) = default;
};

// Cost attributes of an edge. index is the operand position at the sink and
// is present only when the sink op is non-commutative.
struct EdgeAttr {
  std::string source_data_type;
  std::string sink_data_type;
  std::optional<int> index;

  friend bool operator==(const EdgeAttr&, const EdgeAttr&) = default;
  friend auto operator<=>(const EdgeAttr&, const EdgeAttr&) = default;
};

struct GraphNode {
  std::string id;
  NodeAttr attr;
};

struct Edge {
  int source = 0;
  int sink = 0;
  // Ordinal among the parallel edges sharing (source, sink).
  int occurrence = 0;
  // Operand slot at the sink. Not a cost attribute; commutative sinks carry
  // it only so patches can be applied and rendered deterministically.
  int position = 0;
  EdgeAttr attr;
};

// Stable name for one edge of a parallel bundle.
struct EdgeKey {
  std::string source;
  std::string sink;
  int occurrence = 0;

  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

// Attributed directed multigraph. Node order is the canonical topological
// order of the source function; edges follow sink order, then operand
// position (commutative sinks: source id order).
class IrGraph {
 public:
  int AddNode(std::string id, NodeAttr attr);
  // Occurrence is assigned automatically.
  int AddEdge(int source, int sink, int position, EdgeAttr attr);

  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  std::optional<int> NodeIndex(const std::string& id) const;
  std::optional<int> FindEdge(const EdgeKey& key) const;
  EdgeKey KeyOf(int edge) const;
  const std::vector<int>& OutEdges(int node) const { return out_[node]; }
  const std::vector<int>& InEdges(int node) const { return in_[node]; }

  // Function-level metadata carried along for patch generation.
  std::string function_name;
  std::vector<std::string> params;
  std::string return_node;

 private:
  std::vector<GraphNode> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

NodeAttr NodeAttrOf(const Node& node, const Function& f);

// One graph node per IR node and one edge per operand slot. Requires a
// validated function.
IrGraph BuildGraph(const Function& f);

// Operand position of e at its sink, or nullopt for commutative sinks.
// Fails with kUnknownEdge if e is not an edge of g.
absl::StatusOr<std::optional<int>> EdgeIndexOf(const Edge& e, const IrGraph& g);

// Equal node attributes by id and equal edge multisets of
// (source id, sink id, attr). Operand positions are ignored.
bool AttributeIdentical(const IrGraph& a, const IrGraph& b);

struct DotHighlight {
  std::set<std::string> nodes;
  std::set<EdgeKey> edges;
};

// Node label is "<id>\n<op>: <dtype>"; highlighted elements are bold and
// gray-filled.
std::string ToDot(const IrGraph& g, const DotHighlight* highlight = nullptr);

}  // namespace ireco

#endif  // IRECO_GRAPH_H_
