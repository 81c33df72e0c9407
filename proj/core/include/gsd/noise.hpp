#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "gsd/graph.hpp"

namespace gsd {

struct NoiseProfile {
  double property_drop_pct = 0.0;      // in [0,1]
  double label_availability = 1.0;     // in [0,1]
  std::uint64_t seed = 0;
};

/// Pre-noise truth: element id -> canonical label key.
struct GroundTruth {
  std::map<std::string, std::string> node_type;
  std::map<std::string, std::string> edge_type;
};

GroundTruth ground_truth_of(const PropertyGraph& graph);

/// Removes exactly floor(pct * totalPropertyInstances) property instances,
/// chosen by seeded shuffle over all (element, key) pairs, and clears labels
/// on exactly floor((1 - avail) * count) elements, drawn independently for
/// nodes and edges. Ids, element counts and endpoints never change.
PropertyGraph inject_noise(const PropertyGraph& graph,
                           const NoiseProfile& profile, GroundTruth* truth);

}  // namespace gsd
