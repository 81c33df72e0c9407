// Microbenchmarks for the discovery pipeline stages on synthetic graphs.

#include <benchmark/benchmark.h>

#include "gsd/noise.hpp"
#include "gsd/pipeline.hpp"
#include "gsd/synthetic.hpp"

namespace {

using namespace gsd;

SyntheticSpec make_spec(std::size_t nodes_per_type, std::size_t edges_per_type) {
  SyntheticSpec spec;
  const std::vector<std::string> labels = {"Person", "Org", "Post", "Place"};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    SyntheticNodeSpec n;
    n.labels = {labels[i]};
    n.count = nodes_per_type;
    n.properties["name"] = {Datatype::String};
    n.properties["score" + std::to_string(i)] = {Datatype::Integer};
    n.properties["flag" + std::to_string(i)] = {Datatype::Boolean};
    spec.nodes.push_back(std::move(n));
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    SyntheticEdgeSpec e;
    e.labels = {"REL" + std::to_string(i)};
    e.src = labels[i];
    e.tgt = labels[(i + 1) % labels.size()];
    e.count = edges_per_type;
    e.fanout = 2;
    e.properties["since"] = {Datatype::Date};
    spec.edges.push_back(std::move(e));
  }
  return spec;
}

void BM_Discover(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PropertyGraph graph = gen_synthetic(make_spec(n, 2 * n), 7);
  DiscoveryOptions opts;
  for (auto _ : state) {
    SchemaGraph schema = discover_schema(graph, opts, /*postprocess=*/false);
    benchmark::DoNotOptimize(schema);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(graph.element_count()));
}
BENCHMARK(BM_Discover)->Arg(1000)->Arg(5000)->Arg(25000);

void BM_DiscoverMinHash(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PropertyGraph graph = gen_synthetic(make_spec(n, 2 * n), 7);
  DiscoveryOptions opts;
  opts.method = LshMethod::MinHash;
  for (auto _ : state) {
    SchemaGraph schema = discover_schema(graph, opts, /*postprocess=*/false);
    benchmark::DoNotOptimize(schema);
  }
}
BENCHMARK(BM_DiscoverMinHash)->Arg(1000)->Arg(5000);

void BM_Postprocess(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PropertyGraph graph = gen_synthetic(make_spec(n, 2 * n), 7);
  DiscoveryOptions opts;
  const SchemaGraph base = discover_schema(graph, opts, /*postprocess=*/false);
  for (auto _ : state) {
    SchemaGraph schema = base;
    postprocess_schema(schema, graph, /*sample_datatypes=*/true, opts.seed);
    benchmark::DoNotOptimize(schema);
  }
}
BENCHMARK(BM_Postprocess)->Arg(1000)->Arg(5000);

void BM_NoiseInjection(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PropertyGraph graph = gen_synthetic(make_spec(n, 2 * n), 7);
  for (auto _ : state) {
    PropertyGraph noisy =
        inject_noise(graph, NoiseProfile{0.4, 0.5, 11}, nullptr);
    benchmark::DoNotOptimize(noisy);
  }
}
BENCHMARK(BM_NoiseInjection)->Arg(1000)->Arg(5000);

}  // namespace

BENCHMARK_MAIN();
