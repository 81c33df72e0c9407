#include "gsd/synthetic.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gsd {

namespace {

using nlohmann::json;

SyntheticProperty property_from_json(const json& j) {
  SyntheticProperty p;
  if (j.is_string()) {
    p.type = datatype_from_name(j.get<std::string>());
    return p;
  }
  p.type = datatype_from_name(j.at("type").get<std::string>());
  if (j.contains("outlierPct")) p.outlier_pct = j.at("outlierPct").get<double>();
  if (j.contains("presencePct"))
    p.presence_pct = j.at("presencePct").get<double>();
  if (p.outlier_pct < 0.0 || p.outlier_pct > 1.0 || p.presence_pct < 0.0 ||
      p.presence_pct > 1.0)
    throw std::runtime_error("synthetic property percentages must be in [0,1]");
  return p;
}

json property_to_json(const SyntheticProperty& p) {
  if (p.outlier_pct == 0.0 && p.presence_pct == 1.0)
    return datatype_name(p.type);
  json j;
  j["type"] = datatype_name(p.type);
  if (p.outlier_pct != 0.0) j["outlierPct"] = p.outlier_pct;
  if (p.presence_pct != 1.0) j["presencePct"] = p.presence_pct;
  return j;
}

std::map<std::string, SyntheticProperty> properties_from_json(const json& j) {
  std::map<std::string, SyntheticProperty> out;
  for (auto it = j.begin(); it != j.end(); ++it)
    out.emplace(it.key(), property_from_json(it.value()));
  return out;
}

}  // namespace

SyntheticSpec synthetic_spec_from_json(const std::string& text) {
  SyntheticSpec spec;
  json root = json::parse(text);
  for (const auto& j : root.value("nodes", json::array())) {
    SyntheticNodeSpec n;
    for (const auto& l : j.at("labels")) n.labels.insert(l.get<std::string>());
    n.count = j.at("count").get<std::size_t>();
    if (j.contains("properties"))
      n.properties = properties_from_json(j.at("properties"));
    spec.nodes.push_back(std::move(n));
  }
  for (const auto& j : root.value("edges", json::array())) {
    SyntheticEdgeSpec e;
    for (const auto& l : j.at("labels")) e.labels.insert(l.get<std::string>());
    e.src = j.at("src").get<std::string>();
    e.tgt = j.at("tgt").get<std::string>();
    e.count = j.at("count").get<std::size_t>();
    if (j.contains("fanout")) e.fanout = j.at("fanout").get<std::size_t>();
    if (j.contains("properties"))
      e.properties = properties_from_json(j.at("properties"));
    if (e.fanout < 1) throw std::runtime_error("fanout must be >= 1");
    spec.edges.push_back(std::move(e));
  }
  return spec;
}

std::string synthetic_spec_to_json(const SyntheticSpec& spec) {
  json root;
  root["nodes"] = json::array();
  for (const auto& n : spec.nodes) {
    json j;
    j["labels"] = n.labels;
    j["count"] = n.count;
    json props = json::object();
    for (const auto& [k, p] : n.properties) props[k] = property_to_json(p);
    j["properties"] = std::move(props);
    root["nodes"].push_back(std::move(j));
  }
  root["edges"] = json::array();
  for (const auto& e : spec.edges) {
    json j;
    j["labels"] = e.labels;
    j["src"] = e.src;
    j["tgt"] = e.tgt;
    j["count"] = e.count;
    j["fanout"] = e.fanout;
    json props = json::object();
    for (const auto& [k, p] : e.properties) props[k] = property_to_json(p);
    j["properties"] = std::move(props);
    root["edges"].push_back(std::move(j));
  }
  return root.dump(2) + "\n";
}

namespace {

std::string conforming_value(Datatype type, std::mt19937_64& rng) {
  switch (type) {
    case Datatype::Integer:
      return std::to_string(rng() % 1000000);
    case Datatype::Float:
      return std::to_string(rng() % 10000) + "." +
             std::to_string(1 + rng() % 9);
    case Datatype::Boolean:
      return rng() % 2 ? "true" : "false";
    case Datatype::Date: {
      std::ostringstream out;
      out << 1970 + rng() % 55 << "-";
      const unsigned month = 1 + rng() % 12, day = 1 + rng() % 28;
      out << (month < 10 ? "0" : "") << month << "-" << (day < 10 ? "0" : "")
          << day;
      return out.str();
    }
    case Datatype::DateTime: {
      std::ostringstream out;
      out << conforming_value(Datatype::Date, rng) << "T";
      const unsigned h = rng() % 24, m = rng() % 60, s = rng() % 60;
      out << (h < 10 ? "0" : "") << h << ":" << (m < 10 ? "0" : "") << m << ":"
          << (s < 10 ? "0" : "") << s;
      return out.str();
    }
    case Datatype::String:
      return "s" + std::to_string(rng() % 1000000) + "x";
  }
  return "s";
}

std::string generate_value(const SyntheticProperty& p, std::mt19937_64& rng) {
  if (p.outlier_pct > 0.0) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    // outlier: a plain string, incompatible with every non-STRING datatype
    if (coin(rng) < p.outlier_pct)
      return "outlier" + std::to_string(rng() % 1000000) + "x";
  }
  return conforming_value(p.type, rng);
}

PropertyMap generate_properties(
    const std::map<std::string, SyntheticProperty>& specs,
    std::mt19937_64& rng) {
  PropertyMap out;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (const auto& [key, p] : specs) {
    if (p.presence_pct < 1.0 && coin(rng) >= p.presence_pct) continue;
    out.emplace(key, generate_value(p, rng));
  }
  return out;
}

}  // namespace

PropertyGraph gen_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  PropertyGraph graph;
  std::mt19937_64 rng(seed);
  std::ostringstream tag_stream;
  tag_stream << std::hex << seed;
  const std::string tag = tag_stream.str();

  std::map<std::string, std::vector<std::string>> ids_by_key;
  std::size_t node_idx = 0;
  for (const auto& n : spec.nodes) {
    const std::string key = canonical_label_key(n.labels);
    for (std::size_t i = 0; i < n.count; ++i, ++node_idx) {
      std::ostringstream id;
      id << "n";
      id.fill('0');
      id.width(8);
      id << node_idx;
      id << "_" << tag;
      Node node{id.str(), n.labels, generate_properties(n.properties, rng)};
      ids_by_key[key].push_back(node.id);
      graph.add_node(std::move(node));
    }
  }

  std::size_t edge_idx = 0;
  for (const auto& e : spec.edges) {
    auto src_it = ids_by_key.find(e.src);
    auto tgt_it = ids_by_key.find(e.tgt);
    if (src_it == ids_by_key.end() || src_it->second.empty())
      throw std::runtime_error("edge spec references unknown source type: " +
                               e.src);
    if (tgt_it == ids_by_key.end() || tgt_it->second.empty())
      throw std::runtime_error("edge spec references unknown target type: " +
                               e.tgt);
    const auto& srcs = src_it->second;
    const auto& tgts = tgt_it->second;
    for (std::size_t i = 0; i < e.count; ++i, ++edge_idx) {
      std::ostringstream id;
      id << "e";
      id.fill('0');
      id.width(8);
      id << edge_idx;
      id << "_" << tag;
      Edge edge{id.str(), e.labels, srcs[(i / e.fanout) % srcs.size()],
                tgts[i % tgts.size()], generate_properties(e.properties, rng)};
      graph.add_edge(std::move(edge));
    }
  }
  return graph;
}

}  // namespace gsd
