#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gsd/graph.hpp"
#include "gsd/schema.hpp"

namespace gsd {

struct SyntheticProperty {
  Datatype type = Datatype::String;
  double outlier_pct = 0.0;   // chance of a non-conforming string value
  double presence_pct = 1.0;  // chance the property is present at all
};

struct SyntheticNodeSpec {
  LabelSet labels;
  std::map<std::string, SyntheticProperty> properties;
  std::size_t count = 0;
};

struct SyntheticEdgeSpec {
  LabelSet labels;
  std::map<std::string, SyntheticProperty> properties;
  std::string src;  // canonical label key of a node spec
  std::string tgt;
  std::size_t count = 0;
  std::size_t fanout = 1;  // out-degree per source before wrapping
};

struct SyntheticSpec {
  std::vector<SyntheticNodeSpec> nodes;
  std::vector<SyntheticEdgeSpec> edges;
};

SyntheticSpec synthetic_spec_from_json(const std::string& text);
std::string synthetic_spec_to_json(const SyntheticSpec& spec);

/// Deterministic generation: ids embed the seed, values are drawn from the
/// declared datatype (plus seeded outliers/absences). Edge i of a spec runs
/// src[(i / fanout) % nsrc] -> tgt[i % ntgt], so fanout = 1 with a single
/// target gives N:1 and fanout > 1 with enough targets gives 0:N.
/// Throws when an edge spec references an undeclared node label key.
PropertyGraph gen_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

}  // namespace gsd
