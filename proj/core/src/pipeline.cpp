#include "gsd/pipeline.hpp"

#include <chrono>
#include <thread>

namespace gsd {

namespace {

class StageTimer {
 public:
  StageTimer(StageTimings& timings, const std::string& stage)
      : timings_(timings), stage_(stage),
        start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    const auto end = std::chrono::steady_clock::now();
    timings_[stage_] += std::chrono::duration<double>(end - start_).count();
  }

 private:
  StageTimings& timings_;
  std::string stage_;
  std::chrono::steady_clock::time_point start_;
};

/// Runs fn(i) for i in [0, n); slot-indexed writes keep results independent
/// of the thread count.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn fn) {
  if (threads <= 1 || n < 2048) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

LabelSet labels_or_empty(const PropertyGraph& graph, const std::string& id) {
  const Node* n = graph.find_node(id);
  return n ? n->labels : LabelSet{};
}

}  // namespace

IncrementalDiscovery::IncrementalDiscovery(DiscoveryOptions opts)
    : opts_(std::move(opts)) {
  node_index_.role = ElementKind::NodeKind;
  edge_index_.role = ElementKind::EdgeKind;
}

void IncrementalDiscovery::process_batch(const std::vector<Node>& nodes,
                                         const std::vector<Edge>& edges) {
  std::vector<const Node*> node_ptrs;
  node_ptrs.reserve(nodes.size());
  for (const auto& n : nodes) {
    graph_.add_node(n);
    node_index_.extend(property_keys(n.properties));
    node_ptrs.push_back(&graph_.nodes.at(n.id));
  }
  std::vector<const Edge*> edge_ptrs;
  edge_ptrs.reserve(edges.size());
  for (const auto& e : edges) {
    graph_.add_edge(e);
    edge_index_.extend(property_keys(e.properties));
    edge_ptrs.push_back(&graph_.edges.at(e.id));
  }
  run_batch(node_ptrs, edge_ptrs);
}

void IncrementalDiscovery::process_batch(std::vector<Node>&& nodes,
                                         std::vector<Edge>&& edges) {
  std::vector<const Node*> node_ptrs;
  node_ptrs.reserve(nodes.size());
  for (auto& n : nodes) {
    node_index_.extend(property_keys(n.properties));
    const std::string id = n.id;
    graph_.add_node(std::move(n));
    node_ptrs.push_back(&graph_.nodes.at(id));
  }
  std::vector<const Edge*> edge_ptrs;
  edge_ptrs.reserve(edges.size());
  for (auto& e : edges) {
    edge_index_.extend(property_keys(e.properties));
    const std::string id = e.id;
    graph_.add_edge(std::move(e));
    edge_ptrs.push_back(&graph_.edges.at(id));
  }
  nodes.clear();
  edges.clear();
  run_batch(node_ptrs, edge_ptrs);
}

void IncrementalDiscovery::run_batch(const std::vector<const Node*>& nodes,
                                     const std::vector<const Edge*>& edges) {
  last_estimates_.clear();

  auto resolve_params = [&](const std::vector<FeatureVector>& vectors,
                            std::size_t total, std::size_t distinct_labels,
                            ElementKind kind) {
    if (!opts_.adaptive)
      return LshParams{opts_.method, opts_.bucket_length, opts_.num_tables,
                       opts_.seed};
    if (vectors.size() < 2)
      return LshParams{opts_.method, 1.0, 1, opts_.seed};
    AdaptiveEstimate est = estimate_params(vectors, total, distinct_labels,
                                           kind, opts_.seed, opts_.method);
    last_estimates_.push_back(est);
    return est.resolved;
  };

  std::vector<CandidateType> node_cands, edge_cands;

  if (!nodes.empty()) {
    std::set<std::string> label_keys;
    LabelSet distinct_labels;
    for (const Node* n : nodes) {
      label_keys.insert(canonical_label_key(n->labels));
      distinct_labels.insert(n->labels.begin(), n->labels.end());
    }

    std::vector<FeatureVector> vectors(nodes.size());
    {
      StageTimer t(timings_, "featurize");
      const EmbeddingTable emb =
          build_embedding_table(label_keys, opts_.dim, opts_.seed);
      parallel_for(nodes.size(), opts_.threads, [&](std::size_t i) {
        vectors[i] = node_vector(*nodes[i], node_index_, emb);
      });
    }

    Clustering clustering;
    {
      StageTimer t(timings_, "cluster");
      const LshParams params = resolve_params(
          vectors, nodes.size(), distinct_labels.size(), ElementKind::NodeKind);
      if (opts_.method == LshMethod::Elsh) {
        clustering = elsh_cluster(vectors, params);
      } else {
        std::vector<TokenSet> tokens(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i)
          tokens[i] = TokenSet{nodes[i]->id, node_tokens(*nodes[i])};
        clustering = minhash_cluster(tokens, params.num_tables, params.seed,
                                     ElementKind::NodeKind);
      }
    }
    node_cands = cluster_representatives(clustering, graph_);
  }

  if (!edges.empty()) {
    std::set<std::string> label_keys;
    LabelSet distinct_labels;
    for (const Edge* e : edges) {
      label_keys.insert(canonical_label_key(e->labels));
      label_keys.insert(canonical_label_key(labels_or_empty(graph_, e->src)));
      label_keys.insert(canonical_label_key(labels_or_empty(graph_, e->tgt)));
      distinct_labels.insert(e->labels.begin(), e->labels.end());
    }

    std::vector<FeatureVector> vectors(edges.size());
    {
      StageTimer t(timings_, "featurize");
      const EmbeddingTable emb =
          build_embedding_table(label_keys, opts_.dim, opts_.seed);
      parallel_for(edges.size(), opts_.threads, [&](std::size_t i) {
        vectors[i] = edge_vector_resolved(
            *edges[i], labels_or_empty(graph_, edges[i]->src),
            labels_or_empty(graph_, edges[i]->tgt), edge_index_, emb);
      });
    }

    Clustering clustering;
    {
      StageTimer t(timings_, "cluster");
      const LshParams params = resolve_params(
          vectors, edges.size(), distinct_labels.size(), ElementKind::EdgeKind);
      if (opts_.method == LshMethod::Elsh) {
        clustering = elsh_cluster(vectors, params);
      } else {
        std::vector<TokenSet> tokens(edges.size());
        for (std::size_t i = 0; i < edges.size(); ++i)
          tokens[i] = TokenSet{
              edges[i]->id,
              edge_tokens(*edges[i], labels_or_empty(graph_, edges[i]->src),
                          labels_or_empty(graph_, edges[i]->tgt))};
        clustering = minhash_cluster(tokens, params.num_tables, params.seed,
                                     ElementKind::EdgeKind);
      }
    }
    edge_cands = cluster_representatives(clustering, graph_);
  }

  StageTimer t(timings_, "extract");
  schema_ = extract_types(node_cands, edge_cands, graph_, schema_, opts_.theta);
}

void IncrementalDiscovery::postprocess_now() {
  StageTimer t(timings_, "postprocess");
  postprocess_schema(schema_, graph_, opts_.sample_datatypes, opts_.seed);
}

SchemaGraph discover_schema(const PropertyGraph& graph,
                            const DiscoveryOptions& opts, bool postprocess,
                            StageTimings* timings) {
  IncrementalDiscovery disc(opts);
  std::vector<Node> nodes;
  nodes.reserve(graph.node_order.size());
  for (const auto& id : graph.node_order) nodes.push_back(graph.nodes.at(id));
  std::vector<Edge> edges;
  edges.reserve(graph.edge_order.size());
  for (const auto& id : graph.edge_order) edges.push_back(graph.edges.at(id));
  disc.process_batch(std::move(nodes), std::move(edges));
  if (postprocess) disc.postprocess_now();
  if (timings)
    for (const auto& [k, v] : disc.timings()) (*timings)[k] += v;
  return std::move(disc.schema_);
}

}  // namespace gsd
