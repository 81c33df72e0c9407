#include "gsd/noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace gsd {

GroundTruth ground_truth_of(const PropertyGraph& graph) {
  GroundTruth truth;
  for (const auto& [id, n] : graph.nodes)
    truth.node_type[id] = canonical_label_key(n.labels);
  for (const auto& [id, e] : graph.edges)
    truth.edge_type[id] = canonical_label_key(e.labels);
  return truth;
}

namespace {

struct PropRef {
  bool is_node = true;
  std::string id;
  std::string key;
};

}  // namespace

PropertyGraph inject_noise(const PropertyGraph& graph,
                           const NoiseProfile& profile, GroundTruth* truth) {
  if (profile.property_drop_pct < 0.0 || profile.property_drop_pct > 1.0 ||
      profile.label_availability < 0.0 || profile.label_availability > 1.0)
    throw std::invalid_argument("noise percentages must be in [0,1]");

  if (truth) *truth = ground_truth_of(graph);
  PropertyGraph out = graph;
  std::mt19937_64 rng(profile.seed);

  // property drop: exact floor over the global instance list, ingestion order
  std::vector<PropRef> instances;
  for (const auto& id : out.node_order)
    for (const auto& [k, v] : out.nodes.at(id).properties)
      instances.push_back({true, id, k});
  for (const auto& id : out.edge_order)
    for (const auto& [k, v] : out.edges.at(id).properties)
      instances.push_back({false, id, k});
  const std::size_t drop = static_cast<std::size_t>(
      std::floor(profile.property_drop_pct *
                 static_cast<double>(instances.size())));
  std::shuffle(instances.begin(), instances.end(), rng);
  for (std::size_t i = 0; i < drop; ++i) {
    const PropRef& r = instances[i];
    if (r.is_node)
      out.nodes.at(r.id).properties.erase(r.key);
    else
      out.edges.at(r.id).properties.erase(r.key);
  }

  auto clear_labels = [&](const std::vector<std::string>& order, auto& elements) {
    const std::size_t hide = static_cast<std::size_t>(
        std::floor((1.0 - profile.label_availability) *
                   static_cast<double>(order.size())));
    std::vector<std::string> ids = order;
    std::shuffle(ids.begin(), ids.end(), rng);
    for (std::size_t i = 0; i < hide; ++i) elements.at(ids[i]).labels.clear();
  };
  clear_labels(out.node_order, out.nodes);
  clear_labels(out.edge_order, out.edges);

  return out;
}

}  // namespace gsd
