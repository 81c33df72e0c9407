#pragma once

#include <set>
#include <string>
#include <vector>

#include "gsd/featurize.hpp"
#include "gsd/lsh.hpp"
#include "gsd/schema.hpp"

namespace gsd {

/// A cluster summarized by its representative pattern: unions of member
/// labels, property keys and (for edges) endpoint label sets.
struct CandidateType {
  ElementKind kind = ElementKind::NodeKind;
  LabelSet labels;
  KeySet keys;
  LabelSet src_labels;  // edges only
  LabelSet tgt_labels;
  // endpoint label keys of individual members, kept for Jaccard matching of
  // unlabeled edge candidates
  std::set<std::string> endpoint_tokens;
  std::vector<std::string> members;  // sorted element ids

  bool labeled() const { return !labels.empty(); }
  /// keys, plus endpoint tokens for edges.
  std::set<std::string> match_tokens() const;
};

/// Throws on an empty cluster or a member missing from the graph.
CandidateType cluster_representative(const std::vector<std::string>& cluster,
                                     const PropertyGraph& graph,
                                     ElementKind kind);

std::vector<CandidateType> cluster_representatives(const Clustering& clustering,
                                                   const PropertyGraph& graph);

/// |a n b| / |a u b|; both empty -> 1.0.
double jaccard(const KeySet& a, const KeySet& b);

/// Merges batch candidates into a copy of the existing schema: labeled
/// candidates unify by label key; unlabeled ones chase the best labeled match
/// with Jaccard >= theta, then merge pairwise, then join a matching existing
/// ABSTRACT type or become a new one. Edge endpoints are resolved through the
/// node assignment (UNKNOWN sentinel when an endpoint was never seen).
SchemaGraph extract_types(const std::vector<CandidateType>& node_candidates,
                          const std::vector<CandidateType>& edge_candidates,
                          const PropertyGraph& graph, const SchemaGraph& existing,
                          double theta);

/// Union of labels and property keys; for overlapping keys the datatype is
/// joined and MANDATORY survives only if mandatory on both sides.
NodeType merge_node_types(const NodeType& a, const NodeType& b);

/// As merge_node_types, plus union of endpoint pairs.
EdgeType merge_edge_types(const EdgeType& a, const EdgeType& b);

SchemaGraph merge_schemas(const SchemaGraph& s1, const SchemaGraph& s2,
                          double theta);

}  // namespace gsd
