#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gsd/graph.hpp"
#include "gsd/schema.hpp"

namespace gsd {

/// Per-type occurrence statistics gathered from the assigned elements.
struct TypeStats {
  std::int64_t instance_count = 0;
  std::map<std::string, std::int64_t> occurrences;  // property key -> count
  // property key -> observed values, in ingestion order (only when collected)
  std::map<std::string, std::vector<std::string>> values;
};

/// Statistics for every assigned node and edge type, in one map keyed by
/// "n:<type>" / "e:<type>" so node and edge types of the same name never
/// collide.
std::map<std::string, TypeStats> build_type_stats(const PropertyGraph& graph,
                                                  const SchemaGraph& schema,
                                                  bool collect_values);

std::string node_stats_key(const std::string& type_name);
std::string edge_stats_key(const std::string& type_name);

/// MANDATORY iff the property occurs on every instance of the type
/// (f_T(p) = 1 exactly), OPTIONAL otherwise. Types with no assigned
/// instances keep every property OPTIONAL and trigger a warning on stderr.
void infer_property_constraints(SchemaGraph& schema,
                                const std::map<std::string, TypeStats>& stats);

/// Narrowest datatype of one literal: INTEGER, then FLOAT, then BOOLEAN
/// ("true"/"false", case-insensitive), then DATE (ISO YYYY-MM-DD or
/// D/M/YYYY), then DATETIME (ISO 8601), else STRING.
Datatype classify_value(const std::string& value);

/// Join of the per-value datatypes; empty input -> STRING.
Datatype infer_datatype(const std::vector<std::string>& values);

/// min(|values|, max(ceil(0.1*|values|), 1000)) entries drawn without
/// replacement with the given seed; order follows the shuffled draw.
std::vector<std::string> sample_values(const std::vector<std::string>& values,
                                       std::uint64_t seed);

/// Writes the inferred datatype of every property of every type. With
/// sampled = true each value list is subsampled first (seeded).
void infer_datatypes(SchemaGraph& schema,
                     const std::map<std::string, TypeStats>& stats,
                     bool sampled, std::uint64_t seed);

/// Per edge type: max out-degree over source nodes and max in-degree over
/// target nodes, counted on distinct (src,tgt) pairs of assigned edges.
/// Classification: (1,1) -> 0:1, (1,>1) -> N:1, (>1,1) -> 0:N,
/// (>1,>1) -> M:N; no instances -> UNSET.
void compute_cardinalities(SchemaGraph& schema, const PropertyGraph& graph);

/// Full postprocess: constraints, datatypes (optionally sampled),
/// cardinalities; sets schema.postprocessed.
void postprocess_schema(SchemaGraph& schema, const PropertyGraph& graph,
                        bool sample_datatypes, std::uint64_t seed);

}  // namespace gsd
