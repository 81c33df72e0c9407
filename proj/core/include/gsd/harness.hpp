#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsd/metrics.hpp"
#include "gsd/noise.hpp"
#include "gsd/pipeline.hpp"

namespace gsd {

struct BenchCell {
  std::string dataset;
  LshMethod method = LshMethod::Elsh;
  double noise_pct = 0.0;
  double label_avail = 1.0;
  std::uint64_t seed = 0;
  double node_f1 = 0.0;
  double edge_f1 = 0.0;
  double wall_seconds = 0.0;
  bool ok = true;
  std::string error;
};

/// Runs discovery once: noise injection with the cell's profile, the full
/// pipeline with the cell's seed, majority F1* against pre-noise truth.
BenchCell run_cell(const PropertyGraph& graph, const std::string& dataset,
                   LshMethod method, double noise_pct, double label_avail,
                   std::uint64_t seed, const DiscoveryOptions& base);

/// Full cross product of noise grid x availability grid x methods x seeds.
/// Rows appear in grid order; a failing cell is reported (ok = false) and the
/// grid continues.
std::vector<BenchCell> run_benchmark(const PropertyGraph& graph,
                                     const std::string& dataset,
                                     const std::vector<double>& noise_grid,
                                     const std::vector<double>& avail_grid,
                                     const std::vector<LshMethod>& methods,
                                     const std::vector<std::uint64_t>& seeds,
                                     const DiscoveryOptions& base,
                                     int threads = 1);

/// Header dataset,method,noisePct,labelAvail,seed,nodeF1,edgeF1,wallSeconds;
/// failed cells write nan scores.
std::string benchmark_csv(const std::vector<BenchCell>& cells);

}  // namespace gsd
