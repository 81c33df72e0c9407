#include "gsd/graph.hpp"

#include <stdexcept>

namespace gsd {

void PropertyGraph::add_node(Node n) {
  if (nodes.count(n.id)) throw std::runtime_error("duplicate node id: " + n.id);
  if (edges.count(n.id))
    throw std::runtime_error("id used by both a node and an edge: " + n.id);
  node_order.push_back(n.id);
  nodes.emplace(n.id, std::move(n));
}

void PropertyGraph::add_edge(Edge e) {
  if (edges.count(e.id)) throw std::runtime_error("duplicate edge id: " + e.id);
  if (nodes.count(e.id))
    throw std::runtime_error("id used by both a node and an edge: " + e.id);
  edge_order.push_back(e.id);
  edges.emplace(e.id, std::move(e));
}

const Node* PropertyGraph::find_node(const std::string& id) const {
  auto it = nodes.find(id);
  return it == nodes.end() ? nullptr : &it->second;
}

const Edge* PropertyGraph::find_edge(const std::string& id) const {
  auto it = edges.find(id);
  return it == edges.end() ? nullptr : &it->second;
}

void PropertyGraph::check_endpoints() const {
  for (const auto& [id, e] : edges) {
    if (!nodes.count(e.src))
      throw std::runtime_error("edge " + id + " has dangling source " + e.src);
    if (!nodes.count(e.tgt))
      throw std::runtime_error("edge " + id + " has dangling target " + e.tgt);
  }
}

std::string canonical_label_key(const LabelSet& labels) {
  std::string key;
  for (const auto& l : labels) {
    if (!key.empty()) key += '&';
    key += l;
  }
  return key;
}

KeySet property_keys(const PropertyMap& props) {
  KeySet keys;
  for (const auto& [k, v] : props) keys.insert(k);
  return keys;
}

NodePattern node_pattern_of(const Node& node) {
  return NodePattern{node.labels, property_keys(node.properties)};
}

EdgePattern edge_pattern_of(const Edge& edge, const PropertyGraph& graph) {
  const Node* src = graph.find_node(edge.src);
  const Node* tgt = graph.find_node(edge.tgt);
  if (!src) throw std::runtime_error("edge " + edge.id + " has dangling source " + edge.src);
  if (!tgt) throw std::runtime_error("edge " + edge.id + " has dangling target " + edge.tgt);
  return EdgePattern{edge.labels, property_keys(edge.properties), src->labels,
                     tgt->labels};
}

}  // namespace gsd
