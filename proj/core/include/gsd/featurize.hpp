#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsd/graph.hpp"

namespace gsd {

enum class ElementKind { NodeKind, EdgeKind };

/// 64-bit FNV-1a; the stable hash used to derive per-label-key seeds and
/// MinHash token hashes.
std::uint64_t stable_hash(const std::string& s);

/// Seeded pseudo-random point on the unit sphere in R^dim for a label key.
/// The empty key maps to the zero vector. Depends only on (key, dim, seed),
/// never on what other keys exist.
std::vector<double> embed_label_key(const std::string& key, int dim,
                                    std::uint64_t seed);

struct EmbeddingTable {
  int dim = 5;
  std::uint64_t seed = 0;
  std::map<std::string, std::vector<double>> vectors;

  const std::vector<double>& vec(const std::string& key) const;
};

/// dim must be >= 2.
EmbeddingTable build_embedding_table(const std::set<std::string>& label_keys,
                                     int dim, std::uint64_t seed);

/// Append-only global ordering of distinct property keys. The index of a key
/// never changes once assigned.
struct PropertyIndex {
  ElementKind role = ElementKind::NodeKind;
  std::vector<std::string> keys;
  std::map<std::string, std::size_t> positions;

  void extend(const KeySet& new_keys);
  std::optional<std::size_t> index_of(const std::string& key) const;
  std::size_t size() const { return keys.size(); }
};

struct FeatureVector {
  std::vector<double> values;
  std::string owner;
  ElementKind kind = ElementKind::NodeKind;
};

/// Layout: emb[label key] (d) || binary property indicators (|K|).
FeatureVector node_vector(const Node& node, const PropertyIndex& idx,
                          const EmbeddingTable& emb);

/// Layout: emb[edge labels] || emb[src labels] || emb[tgt labels] || binary.
FeatureVector edge_vector(const Edge& edge, const PropertyGraph& graph,
                          const PropertyIndex& idx, const EmbeddingTable& emb);

/// Same layout, with endpoint label sets supplied directly (batch mode may
/// see edges before their endpoints).
FeatureVector edge_vector_resolved(const Edge& edge, const LabelSet& src_labels,
                                   const LabelSet& tgt_labels,
                                   const PropertyIndex& idx,
                                   const EmbeddingTable& emb);

}  // namespace gsd
