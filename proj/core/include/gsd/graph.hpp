#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace gsd {

using LabelSet = std::set<std::string>;
using KeySet = std::set<std::string>;
using PropertyMap = std::map<std::string, std::string>;

struct Node {
  std::string id;
  LabelSet labels;
  PropertyMap properties;
};

struct Edge {
  std::string id;
  LabelSet labels;
  std::string src;
  std::string tgt;
  PropertyMap properties;
};

/// Directed multigraph whose nodes and edges carry label sets and
/// string-valued properties. Values stay raw strings at ingestion; typed
/// interpretation happens only in constraint inference.
struct PropertyGraph {
  std::map<std::string, Node> nodes;
  std::map<std::string, Edge> edges;
  // ingestion order, kept for deterministic batching
  std::vector<std::string> node_order;
  std::vector<std::string> edge_order;

  void add_node(Node n);
  void add_edge(Edge e);

  const Node* find_node(const std::string& id) const;
  const Edge* find_edge(const std::string& id) const;

  std::size_t element_count() const { return nodes.size() + edges.size(); }

  /// Throws if any edge endpoint does not resolve to a node.
  void check_endpoints() const;
};

struct NodePattern {
  LabelSet labels;
  KeySet keys;
  auto operator<=>(const NodePattern&) const = default;
};

struct EdgePattern {
  LabelSet labels;
  KeySet keys;
  LabelSet src_labels;
  LabelSet tgt_labels;
  auto operator<=>(const EdgePattern&) const = default;
};

/// Labels sorted lexicographically, joined by "&"; empty set -> "".
std::string canonical_label_key(const LabelSet& labels);

KeySet property_keys(const PropertyMap& props);

NodePattern node_pattern_of(const Node& node);

/// Throws if an endpoint is dangling.
EdgePattern edge_pattern_of(const Edge& edge, const PropertyGraph& graph);

}  // namespace gsd
