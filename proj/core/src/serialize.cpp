#include "gsd/serialize.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gsd {

namespace {

using nlohmann::json;

std::string sanitize_identifier(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name)
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_'
                      ? c
                      : '_');
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front())))
    out.insert(out.begin(), '_');
  return out;
}

/// Stable name -> identifier map over the sorted type names; identifier
/// collisions get "_2", "_3", ... in that order.
std::map<std::string, std::string> type_identifiers(const SchemaGraph& schema) {
  std::map<std::string, std::string> ids;
  std::set<std::string> taken;
  auto claim = [&](const std::string& scope, const std::string& name) {
    std::string base = sanitize_identifier(name) + "Type";
    std::string id = base;
    for (int n = 2; taken.count(id); ++n)
      id = base + "_" + std::to_string(n);
    taken.insert(id);
    ids[scope + name] = id;
  };
  for (const auto& [name, t] : schema.node_types) claim("n:", name);
  for (const auto& [name, t] : schema.edge_types) claim("e:", name);
  return ids;
}

std::string join_labels(const LabelSet& labels) {
  std::string out;
  for (const auto& l : labels) {
    if (!out.empty()) out += " & ";
    out += l;
  }
  return out;
}

std::string property_block(const std::map<std::string, PropertySpec>& props,
                           PgStrictness mode) {
  if (props.empty()) return "";
  std::string out = " { ";
  bool first = true;
  for (const auto& [key, spec] : props) {
    if (!first) out += ", ";
    first = false;
    if (mode == PgStrictness::Strict) {
      if (spec.presence == Presence::Optional) out += "OPTIONAL ";
      out += key + " " + datatype_name(spec.type);
    } else {
      out += key;
    }
  }
  out += " }";
  return out;
}

std::string endpoint_side(const std::set<std::string>& names,
                          const std::map<std::string, std::string>& ids) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += "|";
    out += ":" + ids.at("n:" + n);
  }
  return out;
}

}  // namespace

std::string emit_pg_schema(const SchemaGraph& schema, PgStrictness mode) {
  if (mode == PgStrictness::Strict && !schema.postprocessed)
    throw std::runtime_error("STRICT output requires a postprocessed schema");

  const std::string keyword = mode == PgStrictness::Strict ? "STRICT" : "LOOSE";
  if (schema.empty())
    return "CREATE GRAPH TYPE DiscoveredGraph " + keyword + " { }\n";

  const auto ids = type_identifiers(schema);
  std::vector<std::string> lines;
  for (const auto& [name, t] : schema.node_types) {
    std::string line = "  (" + ids.at("n:" + name);
    if (t.is_abstract())
      line += " ABSTRACT";
    else
      line += " : " + join_labels(t.labels);
    line += property_block(t.properties, mode) + ")";
    lines.push_back(std::move(line));
  }
  for (const auto& [name, t] : schema.edge_types) {
    std::set<std::string> srcs, tgts;
    for (const auto& [s, tg] : t.endpoints) {
      srcs.insert(s);
      tgts.insert(tg);
    }
    std::string line = "  (" + endpoint_side(srcs, ids) + ")-[" +
                       ids.at("e:" + name);
    if (t.is_abstract())
      line += " ABSTRACT";
    else
      line += " : " + join_labels(t.labels);
    line += property_block(t.properties, mode) + "]->(" +
            endpoint_side(tgts, ids) + ")";
    if (mode == PgStrictness::Strict && t.cardinality != Cardinality::Unset)
      line += " /* " + cardinality_name(t.cardinality) + " */";
    lines.push_back(std::move(line));
  }

  std::string out = "CREATE GRAPH TYPE DiscoveredGraph " + keyword + " {\n";
  for (std::size_t i = 0; i < lines.size(); ++i)
    out += lines[i] + (i + 1 < lines.size() ? ",\n" : "\n");
  out += "}\n";
  return out;
}

namespace {

std::string xsd_type(Datatype t) {
  switch (t) {
    case Datatype::Integer: return "xs:integer";
    case Datatype::Float: return "xs:double";
    case Datatype::Boolean: return "xs:boolean";
    case Datatype::Date: return "xs:date";
    case Datatype::DateTime: return "xs:dateTime";
    case Datatype::String: return "xs:string";
  }
  return "xs:string";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void emit_xsd_type(std::ostringstream& out, const std::string& id,
                   const std::map<std::string, PropertySpec>& props) {
  out << "  <xs:complexType name=\"" << xml_escape(id) << "\">\n"
      << "    <xs:sequence>\n";
  for (const auto& [key, spec] : props) {
    out << "      <xs:element name=\"" << xml_escape(key) << "\" type=\""
        << xsd_type(spec.type) << "\"";
    if (spec.presence == Presence::Optional) out << " minOccurs=\"0\"";
    out << "/>\n";
  }
  out << "    </xs:sequence>\n"
      << "  </xs:complexType>\n";
}

}  // namespace

std::string emit_xsd(const SchemaGraph& schema) {
  const auto ids = type_identifiers(schema);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<xs:schema xmlns:xs=\"http://www.w3.org/2001/XMLSchema\">\n";
  for (const auto& [name, t] : schema.node_types)
    emit_xsd_type(out, ids.at("n:" + name), t.properties);
  for (const auto& [name, t] : schema.edge_types)
    emit_xsd_type(out, ids.at("e:" + name), t.properties);
  out << "</xs:schema>\n";
  return out.str();
}

namespace {

json properties_to_json(const std::map<std::string, PropertySpec>& props) {
  json out = json::object();
  for (const auto& [key, spec] : props)
    out[key] = {{"type", datatype_name(spec.type)},
                {"presence",
                 spec.presence == Presence::Mandatory ? "MANDATORY" : "OPTIONAL"}};
  return out;
}

std::map<std::string, PropertySpec> properties_from_json(const json& j) {
  std::map<std::string, PropertySpec> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    PropertySpec spec;
    spec.type = datatype_from_name(it.value().at("type").get<std::string>());
    spec.presence = it.value().at("presence").get<std::string>() == "MANDATORY"
                        ? Presence::Mandatory
                        : Presence::Optional;
    out.emplace(it.key(), spec);
  }
  return out;
}

}  // namespace

std::string schema_to_json(const SchemaGraph& schema) {
  json root;
  root["postprocessed"] = schema.postprocessed;
  root["nodeTypes"] = json::array();
  for (const auto& [name, t] : schema.node_types)
    root["nodeTypes"].push_back({{"name", t.name},
                                 {"labels", t.labels},
                                 {"properties", properties_to_json(t.properties)}});
  root["edgeTypes"] = json::array();
  for (const auto& [name, t] : schema.edge_types) {
    json endpoints = json::array();
    for (const auto& [s, tg] : t.endpoints)
      endpoints.push_back(json::array({s, tg}));
    root["edgeTypes"].push_back({{"name", t.name},
                                 {"labels", t.labels},
                                 {"properties", properties_to_json(t.properties)},
                                 {"endpoints", std::move(endpoints)},
                                 {"cardinality", cardinality_name(t.cardinality)},
                                 {"maxOut", t.max_out},
                                 {"maxIn", t.max_in}});
  }
  return root.dump(2) + "\n";
}

SchemaGraph schema_from_json(const std::string& text) {
  SchemaGraph schema;
  json root = json::parse(text);
  schema.postprocessed = root.at("postprocessed").get<bool>();
  for (const auto& j : root.at("nodeTypes")) {
    NodeType t;
    t.name = j.at("name").get<std::string>();
    for (const auto& l : j.at("labels")) t.labels.insert(l.get<std::string>());
    t.properties = properties_from_json(j.at("properties"));
    schema.node_types.emplace(t.name, std::move(t));
  }
  for (const auto& j : root.at("edgeTypes")) {
    EdgeType t;
    t.name = j.at("name").get<std::string>();
    for (const auto& l : j.at("labels")) t.labels.insert(l.get<std::string>());
    t.properties = properties_from_json(j.at("properties"));
    for (const auto& e : j.at("endpoints"))
      t.endpoints.emplace(e.at(0).get<std::string>(),
                          e.at(1).get<std::string>());
    t.cardinality = cardinality_from_name(j.at("cardinality").get<std::string>());
    t.max_out = j.at("maxOut").get<std::int64_t>();
    t.max_in = j.at("maxIn").get<std::int64_t>();
    schema.edge_types.emplace(t.name, std::move(t));
  }
  return schema;
}

std::string assignment_to_json(const SchemaGraph& schema) {
  json root;
  root["nodes"] = schema.node_assignment;
  root["edges"] = schema.edge_assignment;
  return root.dump(2) + "\n";
}

void assignment_from_json(const std::string& text, SchemaGraph& schema) {
  json root = json::parse(text);
  schema.node_assignment =
      root.at("nodes").get<std::map<std::string, std::string>>();
  schema.edge_assignment =
      root.at("edges").get<std::map<std::string, std::string>>();
}

void write_schema_files(const SchemaGraph& schema,
                        const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << text;
  };
  write("schema.loose.pgs", emit_pg_schema(schema, PgStrictness::Loose));
  if (schema.postprocessed)
    write("schema.strict.pgs", emit_pg_schema(schema, PgStrictness::Strict));
  write("schema.xsd", emit_xsd(schema));
  write("schema.json", schema_to_json(schema));
  write("assignment.json", assignment_to_json(schema));
}

}  // namespace gsd
