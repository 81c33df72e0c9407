#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gsd/graph.hpp"

namespace gsd {

enum class GraphFormat { Jsonl, CsvPair };

/// batch_size == kAllElements loads everything as one batch.
inline constexpr std::size_t kAllElements = 0;

struct GraphSource {
  GraphFormat format = GraphFormat::Jsonl;
  std::string node_path;                 // JSONL: the (single) input file
  std::optional<std::string> edge_path;  // required for CSV_PAIR
  std::size_t batch_size = kAllElements;
};

struct Batch {
  std::size_t index = 0;
  std::vector<Node> nodes;
  std::vector<Edge> edges;

  std::size_t size() const { return nodes.size() + edges.size(); }
};

/// Loads the whole graph. Edge endpoints must resolve; a dangling endpoint is
/// an error here (batch mode defers resolution instead).
PropertyGraph load_graph(const GraphSource& source);

/// Splits the ingestion-ordered element stream into batches of batch_size
/// elements (last batch may be short). Edges may reference nodes from earlier
/// batches; unresolved endpoints produce a warning, not an error.
std::vector<Batch> stream_batches(const GraphSource& source);

void write_graph_jsonl(const PropertyGraph& graph, const std::string& path);
void write_graph_csv_pair(const PropertyGraph& graph,
                          const std::string& node_path,
                          const std::string& edge_path);

}  // namespace gsd
