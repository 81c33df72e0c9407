#include "gsd/dataio.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gsd {
namespace {

using nlohmann::json;

struct ElementStream {
  std::vector<Node> nodes;  // ingestion order preserved via `order`
  std::vector<Edge> edges;
  // (is_node, index into nodes/edges) in ingestion order
  std::vector<std::pair<bool, std::size_t>> order;
};

void parse_jsonl_line(const std::string& line, std::size_t lineno,
                      const std::string& path, ElementStream& out) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ":" + std::to_string(lineno) +
                             ": malformed JSON: " + e.what());
  }
  auto fail = [&](const std::string& msg) -> std::runtime_error {
    return std::runtime_error(path + ":" + std::to_string(lineno) + ": " + msg);
  };
  if (!obj.is_object() || !obj.contains("kind") || !obj.contains("id"))
    throw fail("expected object with \"kind\" and \"id\"");
  const std::string kind = obj.at("kind").get<std::string>();
  LabelSet labels;
  if (obj.contains("labels"))
    for (const auto& l : obj.at("labels")) labels.insert(l.get<std::string>());
  PropertyMap props;
  if (obj.contains("properties"))
    for (const auto& [k, v] : obj.at("properties").items()) {
      if (k.empty()) throw fail("empty property key");
      props[k] = v.get<std::string>();
    }
  const std::string id = obj.at("id").get<std::string>();
  if (kind == "node") {
    out.order.emplace_back(true, out.nodes.size());
    out.nodes.push_back(Node{id, std::move(labels), std::move(props)});
  } else if (kind == "edge") {
    if (!obj.contains("src") || !obj.contains("tgt"))
      throw fail("edge line missing \"src\" or \"tgt\"");
    out.order.emplace_back(false, out.edges.size());
    out.edges.push_back(Edge{id, std::move(labels),
                             obj.at("src").get<std::string>(),
                             obj.at("tgt").get<std::string>(),
                             std::move(props)});
  } else {
    throw fail("unknown kind \"" + kind + "\"");
  }
}

void read_jsonl_file(const std::string& path, ElementStream& out) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    parse_jsonl_line(line, lineno, path, out);
  }
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

LabelSet split_labels(const std::string& cell) {
  LabelSet labels;
  std::string cur;
  std::istringstream ss(cell);
  while (std::getline(ss, cur, ';'))
    if (!cur.empty()) labels.insert(cur);
  return labels;
}

void read_csv_pair(const std::string& node_path, const std::string& edge_path,
                   ElementStream& out) {
  {
    std::ifstream in(node_path);
    if (!in) throw std::runtime_error("cannot open " + node_path);
    std::string line;
    if (!std::getline(in, line))
      throw std::runtime_error(node_path + ": missing header");
    auto header = split_csv_row(line);
    if (header.size() < 2 || header[0] != "id" || header[1] != "labels")
      throw std::runtime_error(node_path + ":1: header must start id,labels");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      auto fields = split_csv_row(line);
      if (fields.size() != header.size())
        throw std::runtime_error(node_path + ":" + std::to_string(lineno) +
                                 ": expected " + std::to_string(header.size()) +
                                 " fields, got " + std::to_string(fields.size()));
      Node n;
      n.id = fields[0];
      n.labels = split_labels(fields[1]);
      for (std::size_t i = 2; i < fields.size(); ++i)
        if (!fields[i].empty()) n.properties[header[i]] = fields[i];
      out.order.emplace_back(true, out.nodes.size());
      out.nodes.push_back(std::move(n));
    }
  }
  {
    std::ifstream in(edge_path);
    if (!in) throw std::runtime_error("cannot open " + edge_path);
    std::string line;
    if (!std::getline(in, line))
      throw std::runtime_error(edge_path + ": missing header");
    auto header = split_csv_row(line);
    if (header.size() < 4 || header[0] != "id" || header[1] != "label" ||
        header[2] != "src" || header[3] != "tgt")
      throw std::runtime_error(edge_path + ":1: header must start id,label,src,tgt");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      auto fields = split_csv_row(line);
      if (fields.size() != header.size())
        throw std::runtime_error(edge_path + ":" + std::to_string(lineno) +
                                 ": expected " + std::to_string(header.size()) +
                                 " fields, got " + std::to_string(fields.size()));
      Edge e;
      e.id = fields[0];
      e.labels = split_labels(fields[1]);
      e.src = fields[2];
      e.tgt = fields[3];
      for (std::size_t i = 4; i < fields.size(); ++i)
        if (!fields[i].empty()) e.properties[header[i]] = fields[i];
      out.order.emplace_back(false, out.edges.size());
      out.edges.push_back(std::move(e));
    }
  }
}

ElementStream read_source(const GraphSource& source) {
  ElementStream stream;
  if (source.format == GraphFormat::Jsonl) {
    read_jsonl_file(source.node_path, stream);
    if (source.edge_path) read_jsonl_file(*source.edge_path, stream);
  } else {
    if (!source.edge_path)
      throw std::runtime_error("CSV_PAIR source requires an edge path");
    read_csv_pair(source.node_path, *source.edge_path, stream);
  }
  return stream;
}

}  // namespace

PropertyGraph load_graph(const GraphSource& source) {
  ElementStream stream = read_source(source);
  PropertyGraph g;
  for (const auto& [is_node, idx] : stream.order) {
    if (is_node)
      g.add_node(stream.nodes[idx]);
    else
      g.add_edge(stream.edges[idx]);
  }
  g.check_endpoints();
  return g;
}

std::vector<Batch> stream_batches(const GraphSource& source) {
  ElementStream stream = read_source(source);
  const std::size_t total = stream.order.size();
  const std::size_t size =
      source.batch_size == kAllElements ? total : source.batch_size;
  if (source.batch_size != kAllElements && source.batch_size < 1)
    throw std::runtime_error("batch size must be >= 1");

  // duplicate-id check spans the whole stream
  {
    std::set<std::string> node_ids, edge_ids;
    for (const auto& n : stream.nodes)
      if (!node_ids.insert(n.id).second)
        throw std::runtime_error("duplicate node id: " + n.id);
    for (const auto& e : stream.edges) {
      if (!edge_ids.insert(e.id).second)
        throw std::runtime_error("duplicate edge id: " + e.id);
      if (node_ids.count(e.id))
        throw std::runtime_error("id used by both a node and an edge: " + e.id);
      if (!node_ids.count(e.src) || !node_ids.count(e.tgt))
        std::cerr << "warning: edge " << e.id
                  << " references a node outside the stream; resolution deferred\n";
    }
  }

  std::vector<Batch> batches;
  for (std::size_t start = 0; start < total; start += size) {
    Batch b;
    b.index = batches.size();
    const std::size_t end = std::min(total, start + size);
    for (std::size_t i = start; i < end; ++i) {
      const auto& [is_node, idx] = stream.order[i];
      if (is_node)
        b.nodes.push_back(stream.nodes[idx]);
      else
        b.edges.push_back(stream.edges[idx]);
    }
    batches.push_back(std::move(b));
  }
  return batches;
}

void write_graph_jsonl(const PropertyGraph& graph, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  auto dump_common = [](json& obj, const LabelSet& labels,
                        const PropertyMap& props) {
    obj["labels"] = json::array();
    for (const auto& l : labels) obj["labels"].push_back(l);
    obj["properties"] = json::object();
    for (const auto& [k, v] : props) obj["properties"][k] = v;
  };
  for (const auto& id : graph.node_order) {
    const Node& n = graph.nodes.at(id);
    json obj;
    obj["kind"] = "node";
    obj["id"] = n.id;
    dump_common(obj, n.labels, n.properties);
    out << obj.dump() << '\n';
  }
  for (const auto& id : graph.edge_order) {
    const Edge& e = graph.edges.at(id);
    json obj;
    obj["kind"] = "edge";
    obj["id"] = e.id;
    obj["src"] = e.src;
    obj["tgt"] = e.tgt;
    dump_common(obj, e.labels, e.properties);
    out << obj.dump() << '\n';
  }
}

void write_graph_csv_pair(const PropertyGraph& graph,
                          const std::string& node_path,
                          const std::string& edge_path) {
  auto joined_labels = [](const LabelSet& labels) {
    std::string s;
    for (const auto& l : labels) {
      if (!s.empty()) s += ';';
      s += l;
    }
    return s;
  };
  {
    KeySet keys;
    for (const auto& [id, n] : graph.nodes)
      for (const auto& [k, v] : n.properties) keys.insert(k);
    std::ofstream out(node_path);
    if (!out) throw std::runtime_error("cannot write " + node_path);
    out << "id,labels";
    for (const auto& k : keys) out << ',' << csv_quote(k);
    out << '\n';
    for (const auto& id : graph.node_order) {
      const Node& n = graph.nodes.at(id);
      out << csv_quote(n.id) << ',' << csv_quote(joined_labels(n.labels));
      for (const auto& k : keys) {
        out << ',';
        auto it = n.properties.find(k);
        if (it != n.properties.end()) out << csv_quote(it->second);
      }
      out << '\n';
    }
  }
  {
    KeySet keys;
    for (const auto& [id, e] : graph.edges)
      for (const auto& [k, v] : e.properties) keys.insert(k);
    std::ofstream out(edge_path);
    if (!out) throw std::runtime_error("cannot write " + edge_path);
    out << "id,label,src,tgt";
    for (const auto& k : keys) out << ',' << csv_quote(k);
    out << '\n';
    for (const auto& id : graph.edge_order) {
      const Edge& e = graph.edges.at(id);
      out << csv_quote(e.id) << ',' << csv_quote(joined_labels(e.labels)) << ','
          << csv_quote(e.src) << ',' << csv_quote(e.tgt);
      for (const auto& k : keys) {
        out << ',';
        auto it = e.properties.find(k);
        if (it != e.properties.end()) out << csv_quote(it->second);
      }
      out << '\n';
    }
  }
}

}  // namespace gsd
