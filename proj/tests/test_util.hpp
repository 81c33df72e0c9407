#pragma once

// Shared fixtures for the test suite: the running example graph, seeded
// random graph generation, and subprocess helpers for CLI tests.

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "gsd/graph.hpp"
#include "gsd/synthetic.hpp"

namespace gsd::testutil {

/// Social-network example: 7 nodes (one unlabeled person), 7 edges.
inline PropertyGraph example_graph() {
  PropertyGraph g;
  g.add_node({"bob", {"Person"},
              {{"name", "Bob"}, {"gender", "male"}, {"bday", "19/12/1999"}}});
  g.add_node({"alice", {},
              {{"name", "Alice"}, {"gender", "female"}, {"bday", "24/9/2005"}}});
  g.add_node({"john", {"Person"},
              {{"name", "John"}, {"gender", "male"}, {"bday", "1/1/2001"}}});
  g.add_node({"post1", {"Post"}, {{"imgFile", "a.png"}}});
  g.add_node({"post2", {"Post"}, {{"content", "hello"}}});
  g.add_node({"org1", {"Org."}, {{"name", "Acme"}, {"url", "http://a.example"}}});
  g.add_node({"place1", {"Place"}, {{"name", "Athens"}}});
  g.add_edge({"k1", {"KNOWS"}, "alice", "john", {}});
  g.add_edge({"k2", {"KNOWS"}, "alice", "bob", {{"since", "2010"}}});
  g.add_edge({"l1", {"LIKES"}, "bob", "post1", {}});
  g.add_edge({"l2", {"LIKES"}, "john", "post2", {}});
  g.add_edge({"w1", {"WORKS_AT"}, "bob", "org1", {{"from", "2015"}}});
  g.add_edge({"li1", {"LOCATED_IN"}, "org1", "place1", {}});
  g.add_edge({"li2", {"LOCATED_IN"}, "john", "place1", {{"from", "2020"}}});
  return g;
}

/// Labeled random graph with distinct per-type key sets. Type t gets keys
/// {kt_0..kt_2, shared}, so distinct types have Jaccard 1/7.
inline PropertyGraph random_small_graph(std::mt19937_64& rng,
                                        std::size_t max_elements = 200) {
  SyntheticSpec spec;
  const std::size_t node_types = 2 + rng() % 5;
  const std::size_t per_type = 2 + rng() % (max_elements / (3 * node_types));
  for (std::size_t t = 0; t < node_types; ++t) {
    SyntheticNodeSpec n;
    n.labels = {"T" + std::to_string(t)};
    n.count = per_type;
    n.properties["shared"] = {Datatype::String};
    for (int k = 0; k < 3; ++k)
      n.properties["k" + std::to_string(t) + "_" + std::to_string(k)] = {
          Datatype::Integer, 0.0, (k == 2 ? 0.6 : 1.0)};
    spec.nodes.push_back(std::move(n));
  }
  const std::size_t edge_types = 1 + rng() % 4;
  for (std::size_t t = 0; t < edge_types; ++t) {
    SyntheticEdgeSpec e;
    e.labels = {"R" + std::to_string(t)};
    e.src = "T" + std::to_string(t % node_types);
    e.tgt = "T" + std::to_string((t + 1) % node_types);
    e.count = 1 + rng() % (2 * per_type);
    e.fanout = 1 + rng() % 3;
    e.properties["w" + std::to_string(t)] = {Datatype::Float, 0.0, 0.8};
    spec.edges.push_back(std::move(e));
  }
  return gen_synthetic(spec, rng());
}

inline std::filesystem::path fresh_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("gsd_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

/// Runs the CLI binary; returns the process exit code (-1 when it did not
/// exit normally). Output is left on the parent's streams unless redirected
/// in args.
inline int run_cli(const std::string& args) {
  const std::string cmd = std::string(GSD_CLI_PATH) + " " + args;
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace gsd::testutil
