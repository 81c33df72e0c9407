#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "gsd/lsh.hpp"
#include "test_util.hpp"

using namespace gsd;

namespace {

FeatureVector vec(const std::string& owner, std::vector<double> values,
                  ElementKind kind = ElementKind::NodeKind) {
  FeatureVector fv;
  fv.owner = owner;
  fv.values = std::move(values);
  fv.kind = kind;
  return fv;
}

std::set<std::set<std::string>> cluster_sets(const Clustering& c) {
  std::set<std::set<std::string>> out;
  for (const auto& cl : c.clusters) out.insert({cl.begin(), cl.end()});
  return out;
}

bool is_partition(const Clustering& c, std::size_t n) {
  std::set<std::string> seen;
  for (const auto& cl : c.clusters)
    for (const auto& id : cl)
      if (!seen.insert(id).second) return false;
  return seen.size() == n;
}

/// every cluster of `fine` sits inside one cluster of `coarse`
bool refines(const Clustering& fine, const Clustering& coarse) {
  std::map<std::string, std::size_t> where;
  for (std::size_t i = 0; i < coarse.clusters.size(); ++i)
    for (const auto& id : coarse.clusters[i]) where[id] = i;
  for (const auto& cl : fine.clusters) {
    for (std::size_t j = 1; j < cl.size(); ++j)
      if (where.at(cl[j]) != where.at(cl[0])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("method names round trip") {
  CHECK(lsh_method_name(LshMethod::Elsh) == "elsh");
  CHECK(lsh_method_name(LshMethod::MinHash) == "minhash");
  CHECK(lsh_method_from_name("elsh") == LshMethod::Elsh);
  CHECK(lsh_method_from_name("minhash") == LshMethod::MinHash);
  CHECK_THROWS_AS(lsh_method_from_name("simhash"), std::runtime_error);
}

TEST_CASE("adaptive estimation follows the pinned formulas") {
  // two vectors at distance exactly 2.0 pin mu without sampling noise
  std::vector<FeatureVector> vs = {vec("a", {0.0, 0.0}), vec("b", {2.0, 0.0})};

  SUBCASE("worked example: mu=2, L=5, N=100000 gives b=2.4, T=12") {
    const AdaptiveEstimate est =
        estimate_params(vs, 100000, 5, ElementKind::NodeKind, 1);
    CHECK(est.mu == doctest::Approx(2.0));
    CHECK(est.b_base == doctest::Approx(2.4));
    CHECK(est.alpha == 1.0);
    CHECK(est.resolved.bucket_length == doctest::Approx(2.4));
    CHECK(est.resolved.num_tables == 12);
  }
  SUBCASE("alpha thresholds at 3/4 and 10/11 labels") {
    CHECK(estimate_params(vs, 1000, 0, ElementKind::NodeKind, 1).alpha == 0.8);
    CHECK(estimate_params(vs, 1000, 3, ElementKind::NodeKind, 1).alpha == 0.8);
    CHECK(estimate_params(vs, 1000, 4, ElementKind::NodeKind, 1).alpha == 1.0);
    CHECK(estimate_params(vs, 1000, 10, ElementKind::NodeKind, 1).alpha == 1.0);
    CHECK(estimate_params(vs, 1000, 11, ElementKind::NodeKind, 1).alpha == 1.5);
  }
  SUBCASE("node and edge table formulas differ") {
    // log10(100) = 2 < floor, so nodes use 5 and edges use 3
    const auto nodes = estimate_params(vs, 100, 5, ElementKind::NodeKind, 1);
    const auto edges = estimate_params(vs, 100, 5, ElementKind::EdgeKind, 1);
    CHECK(nodes.resolved.num_tables == 12);  // round(2.4 * 5)
    CHECK(edges.resolved.num_tables == 7);   // round(2.4 * 3)
  }
  SUBCASE("tables clamp to [1, 64]") {
    std::vector<FeatureVector> wide = {vec("a", {0.0}), vec("b", {100.0})};
    const auto est = estimate_params(wide, 100000, 5, ElementKind::NodeKind, 1);
    CHECK(est.resolved.num_tables == 64);
  }
  SUBCASE("degenerate mu=0 falls back to b=1, T=1") {
    std::vector<FeatureVector> same = {vec("a", {1.0, 1.0}), vec("b", {1.0, 1.0})};
    const auto est = estimate_params(same, 1000, 5, ElementKind::NodeKind, 1);
    CHECK(est.mu == 0.0);
    CHECK(est.resolved.bucket_length == 1.0);
    CHECK(est.resolved.num_tables == 1);
  }
  SUBCASE("fewer than two vectors is an error") {
    std::vector<FeatureVector> one = {vec("a", {1.0})};
    CHECK_THROWS_AS(estimate_params(one, 1, 1, ElementKind::NodeKind, 1),
                    std::runtime_error);
  }
}

TEST_CASE("elsh groups identical vectors and validates parameters") {
  std::vector<FeatureVector> vs = {vec("a", {1.0, 2.0}), vec("c", {1.0, 2.0}),
                                   vec("b", {1.0, 2.0})};
  const Clustering c = elsh_cluster(vs, {LshMethod::Elsh, 1.0, 8, 3});
  REQUIRE(c.clusters.size() == 1);
  CHECK(c.clusters[0] == std::vector<std::string>{"a", "b", "c"});

  CHECK_THROWS_AS(elsh_cluster(vs, {LshMethod::Elsh, 0.0, 8, 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(elsh_cluster(vs, {LshMethod::Elsh, 1.0, 0, 3}),
                  std::invalid_argument);
  vs.push_back(vec("short", {1.0}));
  CHECK_THROWS_AS(elsh_cluster(vs, {LshMethod::Elsh, 1.0, 8, 3}),
                  std::runtime_error);
  CHECK(elsh_cluster({}, {LshMethod::Elsh, 1.0, 8, 3}).clusters.empty());
}

TEST_CASE("elsh separates far groups and never splits identical points") {
  // two point groups 10 bucket lengths apart; with 15 tables a full-signature
  // collision is essentially impossible on every seed
  const double b = 1.0;
  std::vector<FeatureVector> vs;
  for (int i = 0; i < 50; ++i) {
    vs.push_back(vec("a" + std::to_string(i), {0.0, 0.0, 0.0}));
    vs.push_back(vec("b" + std::to_string(i), {10.0 * b, 0.0, 0.0}));
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Clustering c = elsh_cluster(vs, {LshMethod::Elsh, b, 15, seed});
    REQUIRE(c.clusters.size() == 2);
    CHECK(is_partition(c, vs.size()));
    for (const auto& cl : c.clusters) {
      const char group = cl.front().front();
      for (const auto& id : cl) CHECK(id.front() == group);
    }
  }
}

TEST_CASE("elsh is deterministic and extra tables only refine") {
  std::mt19937_64 rng(5);
  std::vector<FeatureVector> vs;
  for (int i = 0; i < 200; ++i) {
    std::vector<double> v(4);
    for (auto& x : v) x = static_cast<double>(rng() % 100) / 10.0;
    vs.push_back(vec("x" + std::to_string(i), std::move(v)));
  }
  const LshParams p{LshMethod::Elsh, 2.0, 6, 9};
  const Clustering c1 = elsh_cluster(vs, p);
  const Clustering c2 = elsh_cluster(vs, p);
  CHECK(cluster_sets(c1) == cluster_sets(c2));
  CHECK(is_partition(c1, vs.size()));

  // agreeing on tables 1..T+1 implies agreeing on tables 1..T
  for (int extra = 1; extra <= 3; ++extra) {
    LshParams more = p;
    more.num_tables = p.num_tables + extra;
    CHECK(refines(elsh_cluster(vs, more), c1));
  }
}

TEST_CASE("minhash token sets") {
  PropertyGraph g = testutil::example_graph();
  CHECK(node_tokens(g.nodes.at("bob")) ==
        std::set<std::string>{"Person", "bday", "gender", "name"});
  CHECK(node_tokens(g.nodes.at("alice")) ==
        std::set<std::string>{"bday", "gender", "name"});
  CHECK(edge_tokens(g.edges.at("w1"), {"Person"}, {"Org."}) ==
        std::set<std::string>{"WORKS_AT", "from", "src:Person", "tgt:Org."});
}

TEST_CASE("minhash groups identical token sets exactly") {
  std::vector<TokenSet> els;
  for (int i = 0; i < 30; ++i)
    els.push_back({"p" + std::to_string(i), {"Person", "name", "age"}});
  for (int i = 0; i < 30; ++i)
    els.push_back({"o" + std::to_string(i), {"Org", "name", "url"}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Clustering c = minhash_cluster(els, 12, seed, ElementKind::NodeKind);
    CHECK(is_partition(c, els.size()));
    // identical token sets can never split
    std::map<std::string, std::set<std::size_t>> owner_cluster;
    for (std::size_t i = 0; i < c.clusters.size(); ++i)
      for (const auto& id : c.clusters[i])
        owner_cluster[id.substr(0, 1)].insert(i);
    CHECK(owner_cluster.at("p").size() == 1);
    CHECK(owner_cluster.at("o").size() == 1);
    CHECK(c.clusters.size() == 2);  // and these disjoint sets never collide
  }
}

TEST_CASE("minhash rarely collides disjoint token sets") {
  // Monte Carlo: 200 disjoint pairs, 8 tables; full-signature collisions
  // should be (far) below 5%
  int collisions = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TokenSet> pair = {
        {"a", {"x" + std::to_string(trial), "y" + std::to_string(trial)}},
        {"b", {"u" + std::to_string(trial), "v" + std::to_string(trial)}}};
    const Clustering c =
        minhash_cluster(pair, 8, static_cast<std::uint64_t>(trial),
                        ElementKind::NodeKind);
    if (c.clusters.size() == 1) ++collisions;
  }
  CHECK(collisions <= 10);
}

TEST_CASE("minhash puts empty token sets into one dedicated cluster") {
  std::vector<TokenSet> els = {{"e2", {}}, {"a", {"T"}}, {"e1", {}}};
  const Clustering c = minhash_cluster(els, 4, 0, ElementKind::NodeKind);
  REQUIRE(c.clusters.size() == 2);
  const auto sets = cluster_sets(c);
  CHECK(sets.count({"e1", "e2"}) == 1);
  CHECK(sets.count({"a"}) == 1);
  CHECK_THROWS_AS(minhash_cluster(els, 0, 0, ElementKind::NodeKind),
                  std::invalid_argument);
}

TEST_CASE("clusters are sorted for deterministic downstream order") {
  std::vector<FeatureVector> vs = {vec("z", {0.0}), vec("a", {0.0}),
                                   vec("m", {50.0})};
  const Clustering c = elsh_cluster(vs, {LshMethod::Elsh, 1.0, 4, 0});
  REQUIRE(c.clusters.size() == 2);
  CHECK(c.clusters[0] == std::vector<std::string>{"a", "z"});
  CHECK(c.clusters[1] == std::vector<std::string>{"m"});
}
