#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "gsd/dataio.hpp"
#include "gsd/serialize.hpp"
#include "pgs_parser.hpp"
#include "test_util.hpp"

using namespace gsd;
namespace fs = std::filesystem;

namespace {

struct CliFixture {
  fs::path dir;
  fs::path graph;

  CliFixture() : dir(testutil::fresh_dir("cli")) {
    graph = dir / "graph.jsonl";
    write_graph_jsonl(testutil::example_graph(), graph.string());
  }
  ~CliFixture() { fs::remove_all(dir); }

  std::string quiet(const std::string& args) const {
    return args + " > " + (dir / "stdout.txt").string() + " 2> " +
           (dir / "stderr.txt").string();
  }
};

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n' ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("discover writes the schema files for the example graph") {
  CliFixture fx;
  const fs::path out = fx.dir / "out";
  REQUIRE(testutil::run_cli("discover --input " + fx.graph.string() +
                            " --postprocess --out " + out.string() + " > " +
                            (fx.dir / "stdout.txt").string()) == 0);
  for (const std::string f : {"schema.loose.pgs", "schema.strict.pgs",
                              "schema.xsd", "schema.json", "assignment.json"})
    CHECK(fs::exists(out / f));

  const auto parsed =
      testutil::parse_pgs(testutil::read_file(out / "schema.strict.pgs"));
  CHECK(parsed.node_types.size() == 4);
  CHECK(parsed.edge_types.size() == 4);

  // timings go to stdout, one line per stage plus the total
  const std::string stdout_text = testutil::read_file(fx.dir / "stdout.txt");
  CHECK(stdout_text.find("stage featurize ") != std::string::npos);
  CHECK(stdout_text.find("stage cluster ") != std::string::npos);
  CHECK(stdout_text.find("stage extract ") != std::string::npos);
  CHECK(stdout_text.find("stage postprocess ") != std::string::npos);
  CHECK(stdout_text.find("stage total ") != std::string::npos);
}

TEST_CASE("discover is byte-deterministic across reruns") {
  CliFixture fx;
  const fs::path out1 = fx.dir / "o1";
  const fs::path out2 = fx.dir / "o2";
  const std::string base = "discover --input " + fx.graph.string() +
                           " --postprocess --seed 5 --out ";
  REQUIRE(testutil::run_cli(fx.quiet(base + out1.string())) == 0);
  REQUIRE(testutil::run_cli(fx.quiet(base + out2.string())) == 0);
  for (const std::string f : {"schema.loose.pgs", "schema.strict.pgs",
                              "schema.xsd", "schema.json", "assignment.json"})
    CHECK(testutil::read_file(out1 / f) == testutil::read_file(out2 / f));
}

TEST_CASE("empty input yields the empty schema with exit 0") {
  CliFixture fx;
  testutil::write_file(fx.dir / "empty.jsonl", "");
  const fs::path out = fx.dir / "empty_out";
  REQUIRE(testutil::run_cli(fx.quiet("discover --input " +
                                     (fx.dir / "empty.jsonl").string() +
                                     " --postprocess --out " + out.string())) ==
          0);
  CHECK(testutil::read_file(out / "schema.loose.pgs") ==
        "CREATE GRAPH TYPE DiscoveredGraph LOOSE { }\n");
  CHECK(fs::exists(out / "schema.json"));
}

TEST_CASE("incremental ALL equals one-shot discovery byte for byte") {
  CliFixture fx;
  const fs::path stat = fx.dir / "static";
  const fs::path inc = fx.dir / "inc";
  REQUIRE(testutil::run_cli(fx.quiet("discover --input " + fx.graph.string() +
                                     " --postprocess --out " +
                                     stat.string())) == 0);
  REQUIRE(testutil::run_cli(fx.quiet("incremental --input " +
                                     fx.graph.string() + " --out " +
                                     inc.string())) == 0);
  for (const std::string f : {"schema.loose.pgs", "schema.strict.pgs",
                              "schema.xsd", "schema.json", "assignment.json"})
    CHECK(testutil::read_file(stat / f) == testutil::read_file(inc / f));
  CHECK(fs::exists(inc / "schema.batch0.json"));
}

TEST_CASE("small batches converge to the one-shot schema") {
  CliFixture fx;
  const fs::path stat = fx.dir / "static";
  const fs::path inc = fx.dir / "inc3";
  REQUIRE(testutil::run_cli(fx.quiet("discover --input " + fx.graph.string() +
                                     " --postprocess --out " +
                                     stat.string())) == 0);
  REQUIRE(testutil::run_cli(fx.quiet("incremental --input " +
                                     fx.graph.string() +
                                     " --batch-size 3 --postprocess --out " +
                                     inc.string())) == 0);
  // 14 elements in batches of 3: snapshots 0..4
  for (int i = 0; i < 5; ++i)
    CHECK(fs::exists(inc / ("schema.batch" + std::to_string(i) + ".json")));
  CHECK(testutil::read_file(stat / "schema.json") ==
        testutil::read_file(inc / "schema.json"));
  CHECK(testutil::read_file(stat / "schema.strict.pgs") ==
        testutil::read_file(inc / "schema.strict.pgs"));
}

TEST_CASE("input errors exit 1") {
  CliFixture fx;
  CHECK(testutil::run_cli(fx.quiet("discover --input /nonexistent.jsonl --out " +
                                   (fx.dir / "x").string())) == 1);
  // csv without --edges
  CHECK(testutil::run_cli(fx.quiet("discover --input " + fx.graph.string() +
                                   " --format csv --out " +
                                   (fx.dir / "x").string())) == 1);
  // --edges with jsonl
  CHECK(testutil::run_cli(fx.quiet("discover --input " + fx.graph.string() +
                                   " --edges e.csv --out " +
                                   (fx.dir / "x").string())) == 1);
  // non-adaptive without --bucket-length
  CHECK(testutil::run_cli(fx.quiet("discover --input " + fx.graph.string() +
                                   " --tables 4 --out " +
                                   (fx.dir / "x").string())) == 1);
  // bad --batch-size
  CHECK(testutil::run_cli(fx.quiet("incremental --input " + fx.graph.string() +
                                   " --batch-size zero --out " +
                                   (fx.dir / "x").string())) == 1);
}

TEST_CASE("flag parse errors are nonzero without touching outputs") {
  CliFixture fx;
  CHECK(testutil::run_cli(fx.quiet("discover --input " + fx.graph.string() +
                                   " --format xml --out " +
                                   (fx.dir / "x").string())) != 0);
  CHECK(testutil::run_cli(fx.quiet("no-such-command")) != 0);
  CHECK(testutil::run_cli(fx.quiet("discover")) != 0);  // missing required
  CHECK(!fs::exists(fx.dir / "x"));
}

TEST_CASE("GSD_OUT supplies the output directory") {
  CliFixture fx;
  const fs::path out = fx.dir / "env_out";
  const std::string cmd = "GSD_OUT=" + out.string() + " " +
                          std::string(GSD_CLI_PATH) + " " +
                          fx.quiet("discover --input " + fx.graph.string());
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(out / "schema.loose.pgs"));
}

TEST_CASE("csv pair input discovers the same schema as jsonl") {
  CliFixture fx;
  write_graph_csv_pair(testutil::example_graph(),
                       (fx.dir / "n.csv").string(), (fx.dir / "e.csv").string());
  const fs::path out_csv = fx.dir / "out_csv";
  const fs::path out_jsonl = fx.dir / "out_jsonl";
  REQUIRE(testutil::run_cli(fx.quiet(
              "discover --input " + (fx.dir / "n.csv").string() +
              " --edges " + (fx.dir / "e.csv").string() +
              " --format csv --postprocess --out " + out_csv.string())) == 0);
  REQUIRE(testutil::run_cli(fx.quiet("discover --input " + fx.graph.string() +
                                     " --postprocess --out " +
                                     out_jsonl.string())) == 0);
  CHECK(testutil::read_file(out_csv / "schema.json") ==
        testutil::read_file(out_jsonl / "schema.json"));
}

TEST_CASE("inject-noise writes the degraded graph plus truth") {
  CliFixture fx;
  const fs::path out = fx.dir / "noisy";
  REQUIRE(testutil::run_cli(fx.quiet(
              "inject-noise --input " + fx.graph.string() +
              " --drop-pct 0.2 --label-avail 0.5 --seed 3 --out " +
              out.string())) == 0);
  CHECK(fs::exists(out / "graph.jsonl"));
  CHECK(fs::exists(out / "truth.json"));

  GraphSource src;
  src.format = GraphFormat::Jsonl;
  src.node_path = (out / "graph.jsonl").string();
  const PropertyGraph noisy = load_graph(src);
  CHECK(noisy.nodes.size() == 7);
  CHECK(noisy.edges.size() == 7);

  CHECK(testutil::run_cli(fx.quiet("inject-noise --input " + fx.graph.string() +
                                   " --drop-pct 1.5 --out " +
                                   (fx.dir / "x").string())) == 1);
}

TEST_CASE("gen-synthetic produces a loadable graph and truth") {
  CliFixture fx;
  const std::string spec =
      "{\"nodes\":[{\"labels\":[\"A\"],\"count\":5,"
      "\"properties\":{\"p\":\"INTEGER\"}}],\"edges\":[]}";
  testutil::write_file(fx.dir / "spec.json", spec);
  const fs::path out = fx.dir / "synth";
  REQUIRE(testutil::run_cli(fx.quiet("gen-synthetic --spec " +
                                     (fx.dir / "spec.json").string() +
                                     " --seed 2 --out " + out.string())) == 0);
  GraphSource src;
  src.format = GraphFormat::Jsonl;
  src.node_path = (out / "graph.jsonl").string();
  const PropertyGraph g = load_graph(src);
  CHECK(g.nodes.size() == 5);
  CHECK(fs::exists(out / "truth.json"));

  CHECK(testutil::run_cli(fx.quiet("gen-synthetic --spec /nonexistent.json"
                                   " --out " +
                                   (fx.dir / "x").string())) == 1);
}

TEST_CASE("evaluate emits one csv row per grid cell") {
  CliFixture fx;
  const fs::path out = fx.dir / "eval";
  REQUIRE(testutil::run_cli(fx.quiet(
              "evaluate --input " + fx.graph.string() +
              " --grid 0,0.2 --avail 1 --methods elsh --seeds 1,2 --out " +
              out.string())) == 0);
  const std::string csv = testutil::read_file(out / "report.csv");
  CHECK(count_lines(csv) == 1 + 2 * 1 * 1 * 2);
  CHECK(csv.rfind("dataset,method,noisePct,labelAvail,seed,nodeF1,edgeF1,"
                  "wallSeconds\n", 0) == 0);

  CHECK(testutil::run_cli(fx.quiet("evaluate --input " + fx.graph.string() +
                                   " --methods simhash --out " +
                                   (fx.dir / "x").string())) == 1);
}

TEST_CASE("sweep emits the grid plus the adaptive row") {
  CliFixture fx;
  const fs::path out = fx.dir / "sweep";
  REQUIRE(testutil::run_cli(fx.quiet(
              "sweep --input " + fx.graph.string() +
              " --alphas 0.8,1 --tables-grid 4,8 --out " + out.string())) == 0);
  const std::string csv = testutil::read_file(out / "sweep.csv");
  CHECK(count_lines(csv) == 1 + 2 * 2 + 1);
  CHECK(csv.rfind("alpha,tables,", 0) == 0);

  std::istringstream lines(csv);
  std::string line, last;
  while (std::getline(lines, line))
    if (!line.empty()) last = line;
  CHECK(last.rfind("adaptive,", 0) == 0);
}
