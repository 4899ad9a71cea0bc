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

#include "ireco/graph.h"

#include <algorithm>
#include <tuple>

#include "ireco/errors.h"
#include "ireco/ir_validate.h"

namespace ireco {
namespace {

std::string DotQuote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

int IrGraph::AddNode(std::string id, NodeAttr attr) {
  const int index = node_count();
  index_[id] = index;
  nodes_.push_back(GraphNode{std::move(id), std::move(attr)});
  out_.emplace_back();
  in_.emplace_back();
  return index;
}

int IrGraph::AddEdge(int source, int sink, int position, EdgeAttr attr) {
  int occurrence = 0;
  for (int e : out_[source]) {
    if (edges_[e].sink == sink) ++occurrence;
  }
  const int index = edge_count();
  edges_.push_back(Edge{source, sink, occurrence, position, std::move(attr)});
  out_[source].push_back(index);
  in_[sink].push_back(index);
  return index;
}

std::optional<int> IrGraph::NodeIndex(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> IrGraph::FindEdge(const EdgeKey& key) const {
  std::optional<int> source = NodeIndex(key.source);
  std::optional<int> sink = NodeIndex(key.sink);
  if (!source.has_value() || !sink.has_value()) return std::nullopt;
  for (int e : out_[*source]) {
    if (edges_[e].sink == *sink && edges_[e].occurrence == key.occurrence) {
      return e;
    }
  }
  return std::nullopt;
}

EdgeKey IrGraph::KeyOf(int edge) const {
  const Edge& e = edges_[edge];
  return EdgeKey{nodes_[e.source].id, nodes_[e.sink].id, e.occurrence};
}

NodeAttr NodeAttrOf(const Node& node, const Function& f) {
  NodeAttr attr;
  attr.op = std::string(OpKindName(node.op));
  attr.dtype_str = node.type.ToString();
  for (const std::string& operand : node.operands) {
    const Node* def = f.FindNode(operand);
    attr.operand_dtype_str.push_back(def ? def->type.ToString() : "");
  }
  attr.unique_attrs = node.attrs;
  return attr;
}

IrGraph BuildGraph(const Function& f) {
  IrGraph g;
  g.function_name = f.name;
  g.params = f.params;
  g.return_node = f.return_node;
  std::unordered_map<std::string, const Node*> by_id;
  for (const Node& node : f.nodes) by_id[node.id] = &node;
  std::vector<std::string> order = TopologicalOrder(f);
  for (const std::string& id : order) {
    g.AddNode(id, NodeAttrOf(*by_id.at(id), f));
  }
  for (const std::string& id : order) {
    const Node& node = *by_id.at(id);
    const int sink = *g.NodeIndex(id);
    std::vector<int> slots(node.operands.size());
    for (size_t i = 0; i < slots.size(); ++i) slots[i] = static_cast<int>(i);
    const bool commutative = IsCommutative(node.op);
    if (commutative) {
      std::stable_sort(slots.begin(), slots.end(), [&](int a, int b) {
        return node.operands[a] < node.operands[b];
      });
    }
    for (int slot : slots) {
      const Node& source = *by_id.at(node.operands[slot]);
      EdgeAttr attr{source.type.ToString(), node.type.ToString(),
                    commutative ? std::nullopt : std::optional<int>(slot)};
      g.AddEdge(*g.NodeIndex(source.id), sink, slot, std::move(attr));
    }
  }
  return g;
}

absl::StatusOr<std::optional<int>> EdgeIndexOf(const Edge& e, const IrGraph& g) {
  if (e.source < 0 || e.sink < 0 || e.source >= g.node_count() ||
      e.sink >= g.node_count()) {
    return MakeError(ErrorKind::kUnknownEdge, "edge endpoints are not in graph");
  }
  std::optional<int> found = g.FindEdge(EdgeKey{
      g.nodes()[e.source].id, g.nodes()[e.sink].id, e.occurrence});
  if (!found.has_value() || g.edges()[*found].attr != e.attr) {
    return MakeError(ErrorKind::kUnknownEdge,
                     "no edge " + g.nodes()[e.source].id + " -> " +
                         g.nodes()[e.sink].id + " #" +
                         std::to_string(e.occurrence));
  }
  return g.edges()[*found].attr.index;
}

bool AttributeIdentical(const IrGraph& a, const IrGraph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) {
    return false;
  }
  for (const GraphNode& node : a.nodes()) {
    std::optional<int> other = b.NodeIndex(node.id);
    if (!other.has_value() || b.nodes()[*other].attr != node.attr) return false;
  }
  using Row = std::tuple<std::string, std::string, EdgeAttr>;
  auto rows = [](const IrGraph& g) {
    std::vector<Row> out;
    for (const Edge& e : g.edges()) {
      out.emplace_back(g.nodes()[e.source].id, g.nodes()[e.sink].id, e.attr);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return rows(a) == rows(b);
}

std::string ToDot(const IrGraph& g, const DotHighlight* highlight) {
  std::string out = "digraph " + DotQuote(g.function_name) + " {\n";
  for (const GraphNode& node : g.nodes()) {
    out += "  " + DotQuote(node.id) + " [label=" +
           DotQuote(node.id + "\\n" + node.attr.op + ": " + node.attr.dtype_str);
    if (highlight != nullptr && highlight->nodes.contains(node.id)) {
      out += ", style=\"bold,filled\", fillcolor=gray";
    }
    out += "];\n";
  }
  for (int i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    out += "  " + DotQuote(g.nodes()[e.source].id) + " -> " +
           DotQuote(g.nodes()[e.sink].id);
    std::vector<std::string> attrs;
    if (e.attr.index.has_value()) {
      attrs.push_back("label=" + DotQuote(std::to_string(*e.attr.index)));
    }
    if (highlight != nullptr && highlight->edges.contains(g.KeyOf(i))) {
      attrs.push_back("style=bold");
      attrs.push_back("color=gray40");
    }
    if (!attrs.empty()) {
      out += " [";
      for (size_t k = 0; k < attrs.size(); ++k) {
        if (k > 0) out += ", ";
        out += attrs[k];
      }
      out += "]";
    }
    out += ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace ireco
