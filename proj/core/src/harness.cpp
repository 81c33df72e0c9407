#include "gsd/harness.hpp"

#include <chrono>
#include <cstdio>
#include <thread>

namespace gsd {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

BenchCell run_cell(const PropertyGraph& graph, const std::string& dataset,
                   LshMethod method, double noise_pct, double label_avail,
                   std::uint64_t seed, const DiscoveryOptions& base) {
  BenchCell cell;
  cell.dataset = dataset;
  cell.method = method;
  cell.noise_pct = noise_pct;
  cell.label_avail = label_avail;
  cell.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    GroundTruth truth;
    const PropertyGraph noisy =
        inject_noise(graph, NoiseProfile{noise_pct, label_avail, seed}, &truth);
    DiscoveryOptions opts = base;
    opts.method = method;
    opts.seed = seed;
    const SchemaGraph schema =
        discover_schema(noisy, opts, /*postprocess=*/false);
    cell.node_f1 = majority_f1(schema.node_assignment, truth.node_type).macro_f1;
    cell.edge_f1 = majority_f1(schema.edge_assignment, truth.edge_type).macro_f1;
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.error = e.what();
  }
  const auto end = std::chrono::steady_clock::now();
  cell.wall_seconds = std::chrono::duration<double>(end - start).count();
  return cell;
}

std::vector<BenchCell> run_benchmark(const PropertyGraph& graph,
                                     const std::string& dataset,
                                     const std::vector<double>& noise_grid,
                                     const std::vector<double>& avail_grid,
                                     const std::vector<LshMethod>& methods,
                                     const std::vector<std::uint64_t>& seeds,
                                     const DiscoveryOptions& base,
                                     int threads) {
  struct Job {
    LshMethod method;
    double noise;
    double avail;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (LshMethod m : methods)
    for (double n : noise_grid)
      for (double a : avail_grid)
        for (std::uint64_t s : seeds) jobs.push_back({m, n, a, s});

  std::vector<BenchCell> cells(jobs.size());
  auto work = [&](std::size_t i) {
    cells[i] = run_cell(graph, dataset, jobs[i].method, jobs[i].noise,
                        jobs[i].avail, jobs[i].seed, base);
  };
  if (threads <= 1 || jobs.size() < 2) {
    for (std::size_t i = 0; i < jobs.size(); ++i) work(i);
  } else {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads), jobs.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < jobs.size(); i += workers) work(i);
      });
    for (auto& t : pool) t.join();
  }
  return cells;
}

std::string benchmark_csv(const std::vector<BenchCell>& cells) {
  std::string out =
      "dataset,method,noisePct,labelAvail,seed,nodeF1,edgeF1,wallSeconds\n";
  for (const auto& c : cells) {
    out += c.dataset + "," + lsh_method_name(c.method) + "," +
           fmt(c.noise_pct) + "," + fmt(c.label_avail) + "," +
           std::to_string(c.seed) + ",";
    if (c.ok)
      out += fmt(c.node_f1) + "," + fmt(c.edge_f1);
    else
      out += "nan,nan";
    out += "," + fmt(c.wall_seconds) + "\n";
  }
  return out;
}

}  // namespace gsd
