#include "gsd/featurize.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace gsd {

std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<double> embed_label_key(const std::string& key, int dim,
                                    std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("embedding dim must be >= 2");
  std::vector<double> v(dim, 0.0);
  if (key.empty()) return v;
  std::mt19937_64 rng(seed ^ stable_hash(key));
  std::normal_distribution<double> gauss(0.0, 1.0);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& x : v) {
      x = gauss(rng);
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : v) x *= inv;
  return v;
}

const std::vector<double>& EmbeddingTable::vec(const std::string& key) const {
  auto it = vectors.find(key);
  if (it == vectors.end())
    throw std::runtime_error("label key not in embedding table: \"" + key + "\"");
  return it->second;
}

EmbeddingTable build_embedding_table(const std::set<std::string>& label_keys,
                                     int dim, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("embedding dim must be >= 2");
  EmbeddingTable table;
  table.dim = dim;
  table.seed = seed;
  table.vectors[""] = std::vector<double>(dim, 0.0);
  for (const auto& key : label_keys)
    table.vectors[key] = embed_label_key(key, dim, seed);
  return table;
}

void PropertyIndex::extend(const KeySet& new_keys) {
  for (const auto& k : new_keys) {
    if (positions.count(k)) continue;
    positions[k] = keys.size();
    keys.push_back(k);
  }
}

std::optional<std::size_t> PropertyIndex::index_of(const std::string& key) const {
  auto it = positions.find(key);
  if (it == positions.end()) return std::nullopt;
  return it->second;
}

namespace {

void append_binary(std::vector<double>& out, const PropertyMap& props,
                   const PropertyIndex& idx, const std::string& owner) {
  const std::size_t base = out.size();
  out.resize(base + idx.size(), 0.0);
  for (const auto& [k, v] : props) {
    auto pos = idx.index_of(k);
    if (!pos)
      throw std::runtime_error("property key \"" + k + "\" of element " + owner +
                               " missing from property index");
    out[base + *pos] = 1.0;
  }
}

}  // namespace

FeatureVector node_vector(const Node& node, const PropertyIndex& idx,
                          const EmbeddingTable& emb) {
  if (idx.role != ElementKind::NodeKind)
    throw std::invalid_argument("node_vector needs a NODE property index");
  FeatureVector fv;
  fv.owner = node.id;
  fv.kind = ElementKind::NodeKind;
  fv.values = emb.vec(canonical_label_key(node.labels));
  append_binary(fv.values, node.properties, idx, node.id);
  return fv;
}

FeatureVector edge_vector_resolved(const Edge& edge, const LabelSet& src_labels,
                                   const LabelSet& tgt_labels,
                                   const PropertyIndex& idx,
                                   const EmbeddingTable& emb) {
  if (idx.role != ElementKind::EdgeKind)
    throw std::invalid_argument("edge_vector needs an EDGE property index");
  FeatureVector fv;
  fv.owner = edge.id;
  fv.kind = ElementKind::EdgeKind;
  fv.values = emb.vec(canonical_label_key(edge.labels));
  const auto& src = emb.vec(canonical_label_key(src_labels));
  const auto& tgt = emb.vec(canonical_label_key(tgt_labels));
  fv.values.insert(fv.values.end(), src.begin(), src.end());
  fv.values.insert(fv.values.end(), tgt.begin(), tgt.end());
  append_binary(fv.values, edge.properties, idx, edge.id);
  return fv;
}

FeatureVector edge_vector(const Edge& edge, const PropertyGraph& graph,
                          const PropertyIndex& idx, const EmbeddingTable& emb) {
  const Node* src = graph.find_node(edge.src);
  const Node* tgt = graph.find_node(edge.tgt);
  if (!src) throw std::runtime_error("edge " + edge.id + " has dangling source " + edge.src);
  if (!tgt) throw std::runtime_error("edge " + edge.id + " has dangling target " + edge.tgt);
  return edge_vector_resolved(edge, src->labels, tgt->labels, idx, emb);
}

}  // namespace gsd
