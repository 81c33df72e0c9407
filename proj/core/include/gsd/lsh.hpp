#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "gsd/featurize.hpp"

namespace gsd {

enum class LshMethod { Elsh, MinHash };

std::string lsh_method_name(LshMethod m);
LshMethod lsh_method_from_name(const std::string& name);

struct LshParams {
  LshMethod method = LshMethod::Elsh;
  double bucket_length = 1.0;  // ELSH only
  int num_tables = 1;
  std::uint64_t seed = 0;
};

/// Outcome of the adaptive parameter estimation over a data sample.
struct AdaptiveEstimate {
  double mu = 0.0;      // mean pairwise Euclidean distance of the sample
  double b_base = 0.0;  // 1.2 * mu
  double alpha = 1.0;   // label-count correction
  std::size_t distinct_labels = 0;
  std::size_t element_count = 0;
  LshParams resolved;
};

/// Samples min(totalCount, max(ceil(0.01*N), 10000)) vectors with the given
/// seed, estimates the distance scale over at most 100k seeded pairs, and
/// resolves bucket length and table count. Degenerate mu = 0 falls back to
/// b = 1.0 and the minimum table count.
AdaptiveEstimate estimate_params(const std::vector<FeatureVector>& vectors,
                                 std::size_t total_count,
                                 std::size_t distinct_labels, ElementKind kind,
                                 std::uint64_t seed,
                                 LshMethod method = LshMethod::Elsh);

struct Clustering {
  std::vector<std::vector<std::string>> clusters;  // sorted ids, sorted by head
  ElementKind kind = ElementKind::NodeKind;
};

/// Bucketed random projections: per table i, h_i(x) = floor((a_i.x + c_i)/b)
/// with a_i a seeded standard-Gaussian vector and c_i uniform in [0,b).
/// Elements cluster together iff their hash signature agrees across all
/// tables.
Clustering elsh_cluster(const std::vector<FeatureVector>& vectors,
                        const LshParams& params);

struct TokenSet {
  std::string owner;
  std::set<std::string> tokens;
};

/// T seeded min-hash functions over 64-bit token hashes; elements cluster by
/// full signature. Empty token sets land in one dedicated cluster and are
/// never hashed.
Clustering minhash_cluster(const std::vector<TokenSet>& elements,
                           int num_tables, std::uint64_t seed,
                           ElementKind kind);

/// MinHash token sets: labels and property keys; edges additionally encode
/// endpoint label keys as "src:<key>" / "tgt:<key>".
std::set<std::string> node_tokens(const Node& node);
std::set<std::string> edge_tokens(const Edge& edge, const LabelSet& src_labels,
                                  const LabelSet& tgt_labels);

}  // namespace gsd
