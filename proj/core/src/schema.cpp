#include "gsd/schema.hpp"

#include <stdexcept>

namespace gsd {

bool datatype_leq(Datatype a, Datatype b) {
  if (a == b) return true;
  if (b == Datatype::String) return true;
  if (a == Datatype::Integer && b == Datatype::Float) return true;
  if (a == Datatype::Date && b == Datatype::DateTime) return true;
  return false;
}

Datatype datatype_join(Datatype a, Datatype b) {
  if (datatype_leq(a, b)) return b;
  if (datatype_leq(b, a)) return a;
  // incomparable pairs only meet at the top
  return Datatype::String;
}

std::string datatype_name(Datatype t) {
  switch (t) {
    case Datatype::Integer: return "INTEGER";
    case Datatype::Float: return "FLOAT";
    case Datatype::Boolean: return "BOOLEAN";
    case Datatype::Date: return "DATE";
    case Datatype::DateTime: return "DATETIME";
    case Datatype::String: return "STRING";
  }
  throw std::logic_error("bad datatype");
}

Datatype datatype_from_name(const std::string& name) {
  if (name == "INTEGER") return Datatype::Integer;
  if (name == "FLOAT") return Datatype::Float;
  if (name == "BOOLEAN") return Datatype::Boolean;
  if (name == "DATE") return Datatype::Date;
  if (name == "DATETIME") return Datatype::DateTime;
  if (name == "STRING") return Datatype::String;
  throw std::runtime_error("unknown datatype name: " + name);
}

std::string cardinality_name(Cardinality c) {
  switch (c) {
    case Cardinality::Unset: return "UNSET";
    case Cardinality::ZeroOne: return "0:1";
    case Cardinality::NToOne: return "N:1";
    case Cardinality::OneToN: return "0:N";
    case Cardinality::MToN: return "M:N";
  }
  throw std::logic_error("bad cardinality");
}

Cardinality cardinality_from_name(const std::string& name) {
  if (name == "UNSET") return Cardinality::Unset;
  if (name == "0:1") return Cardinality::ZeroOne;
  if (name == "N:1") return Cardinality::NToOne;
  if (name == "0:N") return Cardinality::OneToN;
  if (name == "M:N") return Cardinality::MToN;
  throw std::runtime_error("unknown cardinality name: " + name);
}

KeySet NodeType::keys() const {
  KeySet out;
  for (const auto& [k, spec] : properties) out.insert(k);
  return out;
}

KeySet EdgeType::keys() const {
  KeySet out;
  for (const auto& [k, spec] : properties) out.insert(k);
  return out;
}

void SchemaGraph::check_integrity() const {
  for (const auto& [name, et] : edge_types) {
    for (const auto& [s, t] : et.endpoints) {
      if (!node_types.count(s))
        throw std::runtime_error("edge type " + name +
                                 " references unknown source type " + s);
      if (!node_types.count(t))
        throw std::runtime_error("edge type " + name +
                                 " references unknown target type " + t);
    }
  }
}

}  // namespace gsd
