#include "gsd/schema_ops.hpp"

#include <algorithm>
#include <stdexcept>

#include "gsd/union_find.hpp"

namespace gsd {

namespace {

void add_keys(std::map<std::string, PropertySpec>& props, const KeySet& keys) {
  for (const auto& k : keys) props.try_emplace(k, PropertySpec{});
}

std::map<std::string, PropertySpec> merge_property_specs(
    const std::map<std::string, PropertySpec>& a,
    const std::map<std::string, PropertySpec>& b) {
  std::map<std::string, PropertySpec> out = a;
  for (const auto& [k, spec] : b) {
    auto it = out.find(k);
    if (it == out.end()) {
      out.emplace(k, PropertySpec{spec.type, Presence::Optional});
    } else {
      it->second.type = datatype_join(it->second.type, spec.type);
      it->second.presence = (it->second.presence == Presence::Mandatory &&
                             spec.presence == Presence::Mandatory)
                                ? Presence::Mandatory
                                : Presence::Optional;
    }
  }
  // keys present on one side only cover only that side's instances
  for (const auto& [k, spec] : a)
    if (!b.count(k)) out.at(k).presence = Presence::Optional;
  return out;
}

int next_abstract_index(const std::set<std::string>& names) {
  int next = 0;
  for (const auto& name : names) {
    if (name.rfind(kAbstractPrefix, 0) != 0) continue;
    try {
      next = std::max(next, std::stoi(name.substr(kAbstractPrefix.size())) + 1);
    } catch (const std::exception&) {
    }
  }
  return next;
}

template <typename TypeMap>
std::set<std::string> type_names(const TypeMap& m) {
  std::set<std::string> names;
  for (const auto& [name, t] : m) names.insert(name);
  return names;
}

std::set<std::string> edge_type_tokens(const EdgeType& t) {
  std::set<std::string> tokens = t.keys();
  for (const auto& [s, tg] : t.endpoints) {
    tokens.insert("src:" + s);
    tokens.insert("tgt:" + tg);
  }
  return tokens;
}

double token_jaccard(const std::set<std::string>& a,
                     const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  for (const auto& x : a) inter += b.count(x);
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

std::set<std::string> CandidateType::match_tokens() const {
  std::set<std::string> tokens = keys;
  if (kind == ElementKind::EdgeKind)
    tokens.insert(endpoint_tokens.begin(), endpoint_tokens.end());
  return tokens;
}

CandidateType cluster_representative(const std::vector<std::string>& cluster,
                                     const PropertyGraph& graph,
                                     ElementKind kind) {
  if (cluster.empty()) throw std::runtime_error("empty cluster");
  CandidateType cand;
  cand.kind = kind;
  cand.members = cluster;
  std::sort(cand.members.begin(), cand.members.end());
  for (const auto& id : cand.members) {
    if (kind == ElementKind::NodeKind) {
      const Node* n = graph.find_node(id);
      if (!n) throw std::runtime_error("cluster member is not a node: " + id);
      cand.labels.insert(n->labels.begin(), n->labels.end());
      for (const auto& [k, v] : n->properties) cand.keys.insert(k);
    } else {
      const Edge* e = graph.find_edge(id);
      if (!e) throw std::runtime_error("cluster member is not an edge: " + id);
      cand.labels.insert(e->labels.begin(), e->labels.end());
      for (const auto& [k, v] : e->properties) cand.keys.insert(k);
      const Node* src = graph.find_node(e->src);
      const Node* tgt = graph.find_node(e->tgt);
      const LabelSet src_labels = src ? src->labels : LabelSet{};
      const LabelSet tgt_labels = tgt ? tgt->labels : LabelSet{};
      cand.src_labels.insert(src_labels.begin(), src_labels.end());
      cand.tgt_labels.insert(tgt_labels.begin(), tgt_labels.end());
      cand.endpoint_tokens.insert("src:" + canonical_label_key(src_labels));
      cand.endpoint_tokens.insert("tgt:" + canonical_label_key(tgt_labels));
    }
  }
  return cand;
}

std::vector<CandidateType> cluster_representatives(const Clustering& clustering,
                                                   const PropertyGraph& graph) {
  std::vector<CandidateType> out;
  out.reserve(clustering.clusters.size());
  for (const auto& cluster : clustering.clusters)
    out.push_back(cluster_representative(cluster, graph, clustering.kind));
  return out;
}

double jaccard(const KeySet& a, const KeySet& b) {
  return token_jaccard(a, b);
}

NodeType merge_node_types(const NodeType& a, const NodeType& b) {
  NodeType out;
  out.name = a.name;
  out.labels = a.labels;
  out.labels.insert(b.labels.begin(), b.labels.end());
  out.properties = merge_property_specs(a.properties, b.properties);
  return out;
}

EdgeType merge_edge_types(const EdgeType& a, const EdgeType& b) {
  EdgeType out;
  out.name = a.name;
  out.labels = a.labels;
  out.labels.insert(b.labels.begin(), b.labels.end());
  out.properties = merge_property_specs(a.properties, b.properties);
  out.endpoints = a.endpoints;
  out.endpoints.insert(b.endpoints.begin(), b.endpoints.end());
  out.cardinality = a.cardinality == b.cardinality ? a.cardinality
                                                   : Cardinality::Unset;
  out.max_out = std::max(a.max_out, b.max_out);
  out.max_in = std::max(a.max_in, b.max_in);
  return out;
}

namespace {

struct Extractor {
  const PropertyGraph& graph;
  SchemaGraph& schema;
  double theta;

  void ensure_unknown_type() {
    if (!schema.node_types.count(kUnknownTypeName))
      schema.node_types.emplace(kUnknownTypeName,
                                NodeType{kUnknownTypeName, {}, {}});
  }

  std::string resolve_endpoint(const std::string& node_id) {
    auto it = schema.node_assignment.find(node_id);
    if (it != schema.node_assignment.end()) return it->second;
    ensure_unknown_type();
    return kUnknownTypeName;
  }

  void assign_nodes(const CandidateType& cand, const std::string& type_name) {
    for (const auto& id : cand.members) schema.node_assignment[id] = type_name;
  }

  void assign_edges(const CandidateType& cand, const std::string& type_name) {
    for (const auto& id : cand.members) schema.edge_assignment[id] = type_name;
  }

  void absorb_node_candidate(NodeType& type, const CandidateType& cand) {
    type.labels.insert(cand.labels.begin(), cand.labels.end());
    add_keys(type.properties, cand.keys);
    assign_nodes(cand, type.name);
  }

  void absorb_edge_candidate(EdgeType& type, const CandidateType& cand) {
    type.labels.insert(cand.labels.begin(), cand.labels.end());
    add_keys(type.properties, cand.keys);
    for (const auto& id : cand.members) {
      const Edge& e = graph.edges.at(id);
      type.endpoints.emplace(resolve_endpoint(e.src), resolve_endpoint(e.tgt));
    }
    type.cardinality = Cardinality::Unset;
    assign_edges(cand, type.name);
  }

  // candidate edge tokens over resolved endpoint type names, comparable with
  // edge_type_tokens
  std::set<std::string> resolved_edge_tokens(const CandidateType& cand) {
    std::set<std::string> tokens = cand.keys;
    for (const auto& id : cand.members) {
      const Edge& e = graph.edges.at(id);
      tokens.insert("src:" + resolve_endpoint(e.src));
      tokens.insert("tgt:" + resolve_endpoint(e.tgt));
    }
    return tokens;
  }

  template <typename TypeMap, typename TokensOf>
  const std::string* best_match(const TypeMap& types,
                                const std::set<std::string>& tokens,
                                bool want_abstract, TokensOf tokens_of) {
    const std::string* best = nullptr;
    double best_j = -1.0;
    for (const auto& [name, type] : types) {
      if (name == kUnknownTypeName) continue;
      if (type.is_abstract() != want_abstract) continue;
      const double j = token_jaccard(tokens, tokens_of(type));
      if (j > best_j) {  // map order breaks ties by smallest name
        best_j = j;
        best = &name;
      }
    }
    return (best && best_j >= theta) ? best : nullptr;
  }

  void run_nodes(std::vector<CandidateType> candidates) {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const CandidateType& a, const CandidateType& b) {
                       return std::tie(a.labels, a.keys, a.members) <
                              std::tie(b.labels, b.keys, b.members);
                     });
    std::vector<CandidateType> unlabeled;
    for (const auto& cand : candidates) {
      if (!cand.labeled()) {
        unlabeled.push_back(cand);
        continue;
      }
      const std::string key = canonical_label_key(cand.labels);
      auto it = schema.node_types.find(key);
      if (it == schema.node_types.end())
        it = schema.node_types.emplace(key, NodeType{key, cand.labels, {}}).first;
      absorb_node_candidate(it->second, cand);
    }

    std::vector<CandidateType> leftovers;
    for (const auto& cand : unlabeled) {
      auto keys_of = [](const NodeType& t) { return t.keys(); };
      if (const std::string* name =
              best_match(schema.node_types, cand.keys, false, keys_of)) {
        absorb_node_candidate(schema.node_types.at(*name), cand);
      } else if (const std::string* abs_name =
                     best_match(schema.node_types, cand.keys, true, keys_of)) {
        absorb_node_candidate(schema.node_types.at(*abs_name), cand);
      } else {
        leftovers.push_back(cand);
      }
    }

    finish_abstract(leftovers, /*edges=*/false);
  }

  void run_edges(std::vector<CandidateType> candidates) {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const CandidateType& a, const CandidateType& b) {
                       return std::tie(a.labels, a.keys, a.members) <
                              std::tie(b.labels, b.keys, b.members);
                     });
    std::vector<CandidateType> unlabeled;
    for (const auto& cand : candidates) {
      if (!cand.labeled()) {
        unlabeled.push_back(cand);
        continue;
      }
      const std::string key = canonical_label_key(cand.labels);
      auto it = schema.edge_types.find(key);
      if (it == schema.edge_types.end())
        it = schema.edge_types.emplace(key, EdgeType{key, cand.labels, {}, {}})
                 .first;
      absorb_edge_candidate(it->second, cand);
    }

    std::vector<CandidateType> leftovers;
    for (const auto& cand : unlabeled) {
      const auto tokens = resolved_edge_tokens(cand);
      if (const std::string* name = best_match(schema.edge_types, tokens, false,
                                               edge_type_tokens)) {
        absorb_edge_candidate(schema.edge_types.at(*name), cand);
      } else if (const std::string* abs_name = best_match(
                     schema.edge_types, tokens, true, edge_type_tokens)) {
        absorb_edge_candidate(schema.edge_types.at(*abs_name), cand);
      } else {
        leftovers.push_back(cand);
      }
    }

    finish_abstract(leftovers, /*edges=*/true);
  }

  /// Groups surviving unlabeled candidates pairwise (Jaccard >= theta,
  /// transitively) and turns each group into a new ABSTRACT type, numbered in
  /// canonical order of the group key sets.
  void finish_abstract(const std::vector<CandidateType>& leftovers, bool edges) {
    if (leftovers.empty()) return;
    std::vector<std::set<std::string>> tokens(leftovers.size());
    for (std::size_t i = 0; i < leftovers.size(); ++i)
      tokens[i] = edges ? resolved_edge_tokens(leftovers[i]) : leftovers[i].keys;

    UnionFind uf(leftovers.size());
    for (std::size_t i = 0; i < leftovers.size(); ++i)
      for (std::size_t j = i + 1; j < leftovers.size(); ++j)
        if (token_jaccard(tokens[i], tokens[j]) >= theta) uf.unite(i, j);

    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < leftovers.size(); ++i)
      groups[uf.find(i)].push_back(i);

    // canonical order: by the union of key sets, then by first member id
    struct Group {
      KeySet keys;
      std::vector<std::size_t> members;
    };
    std::vector<Group> ordered;
    for (const auto& [root, idxs] : groups) {
      Group g;
      g.members = idxs;
      for (auto i : idxs)
        g.keys.insert(leftovers[i].keys.begin(), leftovers[i].keys.end());
      ordered.push_back(std::move(g));
    }
    std::sort(ordered.begin(), ordered.end(), [&](const Group& a, const Group& b) {
      return std::tie(a.keys, leftovers[a.members.front()].members) <
             std::tie(b.keys, leftovers[b.members.front()].members);
    });

    int next = edges ? next_abstract_index(type_names(schema.edge_types))
                     : next_abstract_index(type_names(schema.node_types));
    for (const auto& g : ordered) {
      const std::string name = kAbstractPrefix + std::to_string(next++);
      if (edges) {
        auto it = schema.edge_types.emplace(name, EdgeType{name, {}, {}, {}}).first;
        for (auto i : g.members) absorb_edge_candidate(it->second, leftovers[i]);
      } else {
        auto it = schema.node_types.emplace(name, NodeType{name, {}, {}}).first;
        for (auto i : g.members) absorb_node_candidate(it->second, leftovers[i]);
      }
    }
  }
};

}  // namespace

SchemaGraph extract_types(const std::vector<CandidateType>& node_candidates,
                          const std::vector<CandidateType>& edge_candidates,
                          const PropertyGraph& graph, const SchemaGraph& existing,
                          double theta) {
  if (theta < 0.0 || theta > 1.0)
    throw std::invalid_argument("theta must be in [0,1]");
  SchemaGraph schema = existing;
  schema.postprocessed = false;
  Extractor ex{graph, schema, theta};
  ex.run_nodes(node_candidates);
  ex.run_edges(edge_candidates);
  return schema;
}

SchemaGraph merge_schemas(const SchemaGraph& s1, const SchemaGraph& s2,
                          double theta) {
  SchemaGraph out = s1;
  std::map<std::string, std::string> node_name_map;  // s2 name -> merged name

  auto merge_node_into = [&](const std::string& target,
                             const NodeType& incoming) {
    NodeType& t = out.node_types.at(target);
    NodeType merged = merge_node_types(t, incoming);
    merged.name = target;
    t = std::move(merged);
    node_name_map[incoming.name] = target;
  };

  // labeled node types unify by name (= label key)
  std::vector<const NodeType*> unlabeled_nodes;
  for (const auto& [name, t] : s2.node_types) {
    if (name == kUnknownTypeName) {
      node_name_map[name] = kUnknownTypeName;
      if (!out.node_types.count(kUnknownTypeName))
        out.node_types.emplace(kUnknownTypeName, t);
      continue;
    }
    if (t.is_abstract()) {
      unlabeled_nodes.push_back(&t);
      continue;
    }
    if (out.node_types.count(name))
      merge_node_into(name, t);
    else {
      out.node_types.emplace(name, t);
      node_name_map[name] = name;
    }
  }

  int next_node_abstract = next_abstract_index(type_names(out.node_types));
  for (const NodeType* t : unlabeled_nodes) {
    const std::string* best = nullptr;
    double best_j = -1.0;
    bool want_abstract = false;
    for (int pass = 0; pass < 2 && !best; ++pass) {
      want_abstract = pass == 1;
      for (const auto& [name, existing] : out.node_types) {
        if (name == kUnknownTypeName) continue;
        if (existing.is_abstract() != want_abstract) continue;
        const double j = jaccard(t->keys(), existing.keys());
        if (j >= theta && j > best_j) {
          best_j = j;
          best = &name;
        }
      }
      if (best) break;
    }
    if (best) {
      merge_node_into(*best, *t);
    } else {
      std::string name = t->name;
      if (out.node_types.count(name))
        name = kAbstractPrefix + std::to_string(next_node_abstract++);
      NodeType copy = *t;
      copy.name = name;
      node_name_map[t->name] = name;
      out.node_types.emplace(name, std::move(copy));
    }
  }

  auto remap = [&](const std::string& name) {
    auto it = node_name_map.find(name);
    return it == node_name_map.end() ? name : it->second;
  };

  auto remap_edge_type = [&](const EdgeType& t) {
    EdgeType copy = t;
    copy.endpoints.clear();
    for (const auto& [s, tg] : t.endpoints)
      copy.endpoints.emplace(remap(s), remap(tg));
    return copy;
  };

  std::map<std::string, std::string> edge_name_map;
  std::vector<EdgeType> unlabeled_edges;
  for (const auto& [name, t] : s2.edge_types) {
    EdgeType incoming = remap_edge_type(t);
    if (incoming.is_abstract()) {
      unlabeled_edges.push_back(std::move(incoming));
      continue;
    }
    if (out.edge_types.count(name)) {
      EdgeType& target = out.edge_types.at(name);
      target = merge_edge_types(target, incoming);
    } else {
      out.edge_types.emplace(name, std::move(incoming));
    }
    edge_name_map[name] = name;
  }

  int next_edge_abstract = next_abstract_index(type_names(out.edge_types));
  for (const EdgeType& t : unlabeled_edges) {
    const auto tokens = edge_type_tokens(t);
    const std::string* best = nullptr;
    double best_j = -1.0;
    for (int pass = 0; pass < 2 && !best; ++pass) {
      const bool want_abstract = pass == 1;
      for (const auto& [name, existing] : out.edge_types) {
        if (existing.is_abstract() != want_abstract) continue;
        const double j = token_jaccard(tokens, edge_type_tokens(existing));
        if (j >= theta && j > best_j) {
          best_j = j;
          best = &name;
        }
      }
      if (best) break;
    }
    if (best) {
      EdgeType& target = out.edge_types.at(*best);
      EdgeType merged = merge_edge_types(target, t);
      merged.name = *best;
      target = std::move(merged);
      edge_name_map[t.name] = *best;
    } else {
      std::string name = t.name;
      if (out.edge_types.count(name))
        name = kAbstractPrefix + std::to_string(next_edge_abstract++);
      EdgeType copy = t;
      copy.name = name;
      edge_name_map[t.name] = name;
      out.edge_types.emplace(name, std::move(copy));
    }
  }

  for (const auto& [id, type] : s2.node_assignment)
    out.node_assignment.emplace(id, remap(type));
  for (const auto& [id, type] : s2.edge_assignment) {
    auto it = edge_name_map.find(type);
    out.edge_assignment.emplace(id, it == edge_name_map.end() ? type : it->second);
  }

  out.postprocessed = s1.postprocessed && s2.postprocessed;
  return out;
}

}  // namespace gsd
