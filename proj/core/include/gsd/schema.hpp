#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "gsd/graph.hpp"

namespace gsd {

enum class Datatype { Integer, Float, Boolean, Date, DateTime, String };

/// Lattice order: INTEGER < FLOAT < STRING, BOOLEAN < STRING,
/// DATE < DATETIME < STRING. Join exists for every pair (top = STRING).
bool datatype_leq(Datatype a, Datatype b);
Datatype datatype_join(Datatype a, Datatype b);

std::string datatype_name(Datatype t);
Datatype datatype_from_name(const std::string& name);

enum class Presence { Mandatory, Optional };

struct PropertySpec {
  Datatype type = Datatype::String;
  Presence presence = Presence::Optional;
  auto operator<=>(const PropertySpec&) const = default;
};

struct NodeType {
  std::string name;  // canonical label key, ABSTRACT_<n>, or UNKNOWN
  LabelSet labels;
  std::map<std::string, PropertySpec> properties;

  bool is_abstract() const { return labels.empty(); }
  KeySet keys() const;
};

enum class Cardinality { Unset, ZeroOne, NToOne, OneToN, MToN };

/// "0:1", "N:1", "0:N", "M:N"; Unset -> "UNSET".
std::string cardinality_name(Cardinality c);
Cardinality cardinality_from_name(const std::string& name);

using EndpointPair = std::pair<std::string, std::string>;  // node type names

struct EdgeType {
  std::string name;
  LabelSet labels;
  std::map<std::string, PropertySpec> properties;
  std::set<EndpointPair> endpoints;
  Cardinality cardinality = Cardinality::Unset;
  // raw degree maxima, kept so either reading of the cardinality table can
  // be recovered
  std::int64_t max_out = 0;
  std::int64_t max_in = 0;

  bool is_abstract() const { return labels.empty(); }
  KeySet keys() const;
};

/// Discovered schema: node types, edge types, endpoint connectivity, plus the
/// per-element type assignment retained for constraint inference and
/// evaluation.
struct SchemaGraph {
  std::map<std::string, NodeType> node_types;
  std::map<std::string, EdgeType> edge_types;
  std::map<std::string, std::string> node_assignment;  // element id -> type
  std::map<std::string, std::string> edge_assignment;
  bool postprocessed = false;

  bool empty() const { return node_types.empty() && edge_types.empty(); }

  /// Throws unless every edge-type endpoint name resolves to a node type.
  void check_integrity() const;
};

inline const std::string kUnknownTypeName = "UNKNOWN";
inline const std::string kAbstractPrefix = "ABSTRACT_";

}  // namespace gsd
