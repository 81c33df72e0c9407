#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gsd/constraints.hpp"
#include "gsd/featurize.hpp"
#include "gsd/graph.hpp"
#include "gsd/lsh.hpp"
#include "gsd/schema.hpp"
#include "gsd/schema_ops.hpp"

namespace gsd {

struct DiscoveryOptions {
  LshMethod method = LshMethod::Elsh;
  bool adaptive = true;
  double bucket_length = 1.0;  // used only when adaptive is off
  int num_tables = 1;          // used only when adaptive is off
  double theta = 0.9;
  int dim = 5;
  std::uint64_t seed = 0;
  bool sample_datatypes = false;
  int threads = 1;
};

/// Cumulative per-stage wall times in seconds.
using StageTimings = std::map<std::string, double>;

/// Evolving discovery state: the accumulated graph, the append-only property
/// indices, and the schema chain. Feeding all data as one batch is exactly
/// the static pipeline.
class IncrementalDiscovery {
 public:
  explicit IncrementalDiscovery(DiscoveryOptions opts);

  /// Ingests the batch, clusters it, extracts types and merges them into the
  /// evolving schema. Elements are processed in the given order.
  void process_batch(const std::vector<Node>& nodes,
                     const std::vector<Edge>& edges);

  /// Move-ingesting variant for large batches.
  void process_batch(std::vector<Node>&& nodes, std::vector<Edge>&& edges);

  /// Recomputes constraints, datatypes and cardinalities over everything
  /// ingested so far.
  void postprocess_now();

  const SchemaGraph& schema() const { return schema_; }
  const PropertyGraph& graph() const { return graph_; }
  const DiscoveryOptions& options() const { return opts_; }
  const StageTimings& timings() const { return timings_; }
  /// Adaptive estimates of the most recent batch, when adaptive is on.
  const std::vector<AdaptiveEstimate>& last_estimates() const {
    return last_estimates_;
  }

 private:
  void run_batch(const std::vector<const Node*>& nodes,
                 const std::vector<const Edge*>& edges);

  DiscoveryOptions opts_;
  PropertyGraph graph_;
  PropertyIndex node_index_;
  PropertyIndex edge_index_;
  SchemaGraph schema_;
  StageTimings timings_;
  std::vector<AdaptiveEstimate> last_estimates_;

  friend SchemaGraph discover_schema(const PropertyGraph&,
                                     const DiscoveryOptions&, bool,
                                     StageTimings*);
};

/// Single-batch discovery; postprocesses when asked. Timings are added to
/// *timings when given.
SchemaGraph discover_schema(const PropertyGraph& graph,
                            const DiscoveryOptions& opts, bool postprocess,
                            StageTimings* timings = nullptr);

}  // namespace gsd
