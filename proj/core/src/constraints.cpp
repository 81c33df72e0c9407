#include "gsd/constraints.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <random>

#include "gsd/featurize.hpp"

namespace gsd {

std::string node_stats_key(const std::string& type_name) {
  return "n:" + type_name;
}

std::string edge_stats_key(const std::string& type_name) {
  return "e:" + type_name;
}

std::map<std::string, TypeStats> build_type_stats(const PropertyGraph& graph,
                                                  const SchemaGraph& schema,
                                                  bool collect_values) {
  std::map<std::string, TypeStats> stats;
  for (const auto& [name, t] : schema.node_types)
    stats.emplace(node_stats_key(name), TypeStats{});
  for (const auto& [name, t] : schema.edge_types)
    stats.emplace(edge_stats_key(name), TypeStats{});

  auto record = [&](const std::string& key, const PropertyMap& props) {
    auto it = stats.find(key);
    if (it == stats.end()) return;
    TypeStats& s = it->second;
    ++s.instance_count;
    for (const auto& [k, v] : props) {
      ++s.occurrences[k];
      if (collect_values) s.values[k].push_back(v);
    }
  };

  // ingestion order keeps collected values deterministic
  for (const auto& id : graph.node_order) {
    auto a = schema.node_assignment.find(id);
    if (a != schema.node_assignment.end())
      record(node_stats_key(a->second), graph.nodes.at(id).properties);
  }
  for (const auto& id : graph.edge_order) {
    auto a = schema.edge_assignment.find(id);
    if (a != schema.edge_assignment.end())
      record(edge_stats_key(a->second), graph.edges.at(id).properties);
  }
  return stats;
}

namespace {

void apply_presence(std::map<std::string, PropertySpec>& props,
                    const TypeStats& stats, const std::string& type_name) {
  if (stats.instance_count == 0) {
    for (auto& [k, spec] : props) spec.presence = Presence::Optional;
    if (!props.empty())
      std::cerr << "warning: type " << type_name
                << " has no assigned instances, all properties OPTIONAL\n";
    return;
  }
  for (auto& [k, spec] : props) {
    auto it = stats.occurrences.find(k);
    const std::int64_t count = it == stats.occurrences.end() ? 0 : it->second;
    spec.presence = count == stats.instance_count ? Presence::Mandatory
                                                  : Presence::Optional;
  }
}

}  // namespace

void infer_property_constraints(SchemaGraph& schema,
                                const std::map<std::string, TypeStats>& stats) {
  static const TypeStats kEmpty;
  for (auto& [name, t] : schema.node_types) {
    auto it = stats.find(node_stats_key(name));
    apply_presence(t.properties, it == stats.end() ? kEmpty : it->second, name);
  }
  for (auto& [name, t] : schema.edge_types) {
    auto it = stats.find(edge_stats_key(name));
    apply_presence(t.properties, it == stats.end() ? kEmpty : it->second, name);
  }
}

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
  if (from >= to || to > s.size()) return false;
  for (std::size_t i = from; i < to; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

bool is_integer(const std::string& s) {
  std::size_t i = (s.size() > 1 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  return all_digits(s, i, s.size());
}

bool is_float(const std::string& s) {
  if (s.empty()) return false;
  const char* begin = s.c_str();
  char* end = nullptr;
  std::strtod(begin, &end);
  if (end != begin + s.size()) return false;
  // strtod accepts "inf"/"nan"; those stay strings
  for (char c : s)
    if (std::isalpha(static_cast<unsigned char>(c)) && c != 'e' && c != 'E')
      return false;
  return true;
}

bool is_boolean(const std::string& s) {
  if (s.size() != 4 && s.size() != 5) return false;
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return lower == "true" || lower == "false";
}

bool valid_month_day(int month, int day) {
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

bool is_iso_date(const std::string& s) {
  // YYYY-MM-DD
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  if (!all_digits(s, 0, 4) || !all_digits(s, 5, 7) || !all_digits(s, 8, 10))
    return false;
  return valid_month_day(std::stoi(s.substr(5, 2)), std::stoi(s.substr(8, 2)));
}

bool is_slash_date(const std::string& s) {
  // D/M/YYYY with 1-2 digit day and month
  const auto first = s.find('/');
  if (first == std::string::npos) return false;
  const auto second = s.find('/', first + 1);
  if (second == std::string::npos || s.find('/', second + 1) != std::string::npos)
    return false;
  if (first < 1 || first > 2 || second - first - 1 < 1 || second - first - 1 > 2)
    return false;
  if (s.size() - second - 1 != 4) return false;
  if (!all_digits(s, 0, first) || !all_digits(s, first + 1, second) ||
      !all_digits(s, second + 1, s.size()))
    return false;
  return valid_month_day(std::stoi(s.substr(first + 1, second - first - 1)),
                         std::stoi(s.substr(0, first)));
}

bool is_datetime(const std::string& s) {
  // ISO 8601: <date>T<HH:MM:SS>[.fff][Z|+HH:MM|-HH:MM]
  const auto t = s.find('T');
  if (t == std::string::npos || !is_iso_date(s.substr(0, t))) return false;
  std::string rest = s.substr(t + 1);
  if (!rest.empty() && rest.back() == 'Z') rest.pop_back();
  const auto plus = rest.find_last_of("+-");
  if (plus != std::string::npos && plus >= 8) {
    const std::string off = rest.substr(plus + 1);
    if (off.size() != 5 || off[2] != ':' || !all_digits(off, 0, 2) ||
        !all_digits(off, 3, 5))
      return false;
    rest = rest.substr(0, plus);
  }
  const auto dot = rest.find('.');
  if (dot != std::string::npos) {
    if (!all_digits(rest, dot + 1, rest.size())) return false;
    rest = rest.substr(0, dot);
  }
  if (rest.size() != 8 || rest[2] != ':' || rest[5] != ':') return false;
  if (!all_digits(rest, 0, 2) || !all_digits(rest, 3, 5) ||
      !all_digits(rest, 6, 8))
    return false;
  const int h = std::stoi(rest.substr(0, 2));
  const int m = std::stoi(rest.substr(3, 2));
  const int sec = std::stoi(rest.substr(6, 2));
  return h <= 23 && m <= 59 && sec <= 60;
}

}  // namespace

Datatype classify_value(const std::string& value) {
  if (is_integer(value)) return Datatype::Integer;
  if (is_float(value)) return Datatype::Float;
  if (is_boolean(value)) return Datatype::Boolean;
  if (is_iso_date(value) || is_slash_date(value)) return Datatype::Date;
  if (is_datetime(value)) return Datatype::DateTime;
  return Datatype::String;
}

Datatype infer_datatype(const std::vector<std::string>& values) {
  if (values.empty()) return Datatype::String;
  Datatype acc = classify_value(values.front());
  for (std::size_t i = 1; i < values.size() && acc != Datatype::String; ++i)
    acc = datatype_join(acc, classify_value(values[i]));
  return acc;
}

std::vector<std::string> sample_values(const std::vector<std::string>& values,
                                       std::uint64_t seed) {
  const std::size_t n = values.size();
  const std::size_t want = std::min<std::size_t>(
      n, std::max<std::size_t>(
             static_cast<std::size_t>(std::ceil(0.1 * static_cast<double>(n))),
             1000));
  if (want >= n) return values;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(want);
  std::vector<std::string> out;
  out.reserve(want);
  for (auto i : idx) out.push_back(values[i]);
  return out;
}

namespace {

void apply_datatypes(std::map<std::string, PropertySpec>& props,
                     const TypeStats& stats, bool sampled, std::uint64_t seed,
                     const std::string& stats_key) {
  for (auto& [k, spec] : props) {
    auto it = stats.values.find(k);
    if (it == stats.values.end() || it->second.empty()) {
      spec.type = Datatype::String;
      continue;
    }
    if (sampled) {
      // per-property seed keeps the draw independent of sibling properties
      const std::uint64_t s = seed ^ stable_hash(stats_key + "/" + k);
      spec.type = infer_datatype(sample_values(it->second, s));
    } else {
      spec.type = infer_datatype(it->second);
    }
  }
}

}  // namespace

void infer_datatypes(SchemaGraph& schema,
                     const std::map<std::string, TypeStats>& stats,
                     bool sampled, std::uint64_t seed) {
  static const TypeStats kEmpty;
  for (auto& [name, t] : schema.node_types) {
    const std::string key = node_stats_key(name);
    auto it = stats.find(key);
    apply_datatypes(t.properties, it == stats.end() ? kEmpty : it->second,
                    sampled, seed, key);
  }
  for (auto& [name, t] : schema.edge_types) {
    const std::string key = edge_stats_key(name);
    auto it = stats.find(key);
    apply_datatypes(t.properties, it == stats.end() ? kEmpty : it->second,
                    sampled, seed, key);
  }
}

void compute_cardinalities(SchemaGraph& schema, const PropertyGraph& graph) {
  std::map<std::string, std::set<EndpointPair>> pairs;  // distinct endpoints
  for (const auto& [id, type] : schema.edge_assignment) {
    const Edge* e = graph.find_edge(id);
    if (e) pairs[type].emplace(e->src, e->tgt);
  }
  for (auto& [name, t] : schema.edge_types) {
    auto it = pairs.find(name);
    if (it == pairs.end() || it->second.empty()) {
      t.cardinality = Cardinality::Unset;
      t.max_out = 0;
      t.max_in = 0;
      continue;
    }
    std::map<std::string, std::int64_t> out_deg, in_deg;
    for (const auto& [src, tgt] : it->second) {
      ++out_deg[src];
      ++in_deg[tgt];
    }
    std::int64_t max_out = 0, max_in = 0;
    for (const auto& [n, d] : out_deg) max_out = std::max(max_out, d);
    for (const auto& [n, d] : in_deg) max_in = std::max(max_in, d);
    t.max_out = max_out;
    t.max_in = max_in;
    if (max_out == 1 && max_in == 1)
      t.cardinality = Cardinality::ZeroOne;
    else if (max_out == 1)
      t.cardinality = Cardinality::NToOne;
    else if (max_in == 1)
      t.cardinality = Cardinality::OneToN;
    else
      t.cardinality = Cardinality::MToN;
  }
}

void postprocess_schema(SchemaGraph& schema, const PropertyGraph& graph,
                        bool sample_datatypes, std::uint64_t seed) {
  const auto stats = build_type_stats(graph, schema, /*collect_values=*/true);
  infer_property_constraints(schema, stats);
  infer_datatypes(schema, stats, sample_datatypes, seed);
  compute_cardinalities(schema, graph);
  schema.postprocessed = true;
}

}  // namespace gsd
