#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "gsd/pipeline.hpp"
#include "gsd/serialize.hpp"
#include "pgs_parser.hpp"
#include "test_util.hpp"

using namespace gsd;
using testutil::PgsEdgeType;
using testutil::PgsNodeType;
using testutil::PgsSchema;
namespace fs = std::filesystem;

namespace {

const fs::path kGolden = fs::path(GSD_TEST_SOURCE_DIR) / "golden";

SchemaGraph example_schema(bool postprocess) {
  DiscoveryOptions opts;
  return discover_schema(testutil::example_graph(), opts, postprocess);
}

/// Minimal well-formedness check: tags balance, attributes are quoted,
/// nothing dangles after the root element closes.
bool xml_well_formed(const std::string& text) {
  std::size_t i = 0;
  if (text.rfind("<?xml", 0) == 0) {
    i = text.find("?>");
    if (i == std::string::npos) return false;
    i += 2;
  }
  std::vector<std::string> stack;
  bool root_closed = false;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '<') {
      const auto end = text.find('>', i);
      if (end == std::string::npos) return false;
      std::string tag = text.substr(i + 1, end - i - 1);
      if (tag.empty() || root_closed) return false;
      if (tag[0] == '/') {
        if (stack.empty() || stack.back() != tag.substr(1)) return false;
        stack.pop_back();
        if (stack.empty()) root_closed = true;
      } else {
        const bool self_closing = tag.back() == '/';
        if (self_closing) tag.pop_back();
        // quotes inside the tag must pair up
        if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
        const std::string name = tag.substr(0, tag.find_first_of(" \t"));
        if (name.empty()) return false;
        if (!self_closing) stack.push_back(name);
        else if (stack.empty()) root_closed = true;
      }
      i = end + 1;
    } else if (c == '>') {
      return false;
    } else {
      if (stack.empty() && !std::isspace(static_cast<unsigned char>(c)))
        return false;
      ++i;
    }
  }
  return stack.empty() && root_closed;
}

}  // namespace

TEST_CASE("xml checker rejects malformed documents") {
  CHECK(xml_well_formed("<a><b x=\"1\"/></a>"));
  CHECK(!xml_well_formed("<a><b></a>"));
  CHECK(!xml_well_formed("<a></a><b></b>"));
  CHECK(!xml_well_formed("<a x=\"1></a>"));
  CHECK(!xml_well_formed("text<a></a>"));
}

TEST_CASE("empty schema renders as the single-line form") {
  CHECK(emit_pg_schema(SchemaGraph{}, PgStrictness::Loose) ==
        "CREATE GRAPH TYPE DiscoveredGraph LOOSE { }\n");
  SchemaGraph s;
  s.postprocessed = true;
  CHECK(emit_pg_schema(s, PgStrictness::Strict) ==
        "CREATE GRAPH TYPE DiscoveredGraph STRICT { }\n");
  const PgsSchema parsed =
      testutil::parse_pgs(emit_pg_schema(SchemaGraph{}, PgStrictness::Loose));
  CHECK(parsed.node_types.empty());
  CHECK(parsed.edge_types.empty());
}

TEST_CASE("strict output requires a postprocessed schema") {
  const SchemaGraph s = example_schema(/*postprocess=*/false);
  CHECK_THROWS_AS(emit_pg_schema(s, PgStrictness::Strict), std::runtime_error);
  CHECK_NOTHROW(emit_pg_schema(s, PgStrictness::Loose));
}

TEST_CASE("example schema matches the frozen golden files") {
  const SchemaGraph s = example_schema(/*postprocess=*/true);
  CHECK(emit_pg_schema(s, PgStrictness::Loose) ==
        testutil::read_file(kGolden / "example.schema.loose.pgs"));
  CHECK(emit_pg_schema(s, PgStrictness::Strict) ==
        testutil::read_file(kGolden / "example.schema.strict.pgs"));
  CHECK(emit_xsd(s) == testutil::read_file(kGolden / "example.schema.xsd"));
  CHECK(schema_to_json(s) == testutil::read_file(kGolden / "example.schema.json"));
  CHECK(assignment_to_json(s) ==
        testutil::read_file(kGolden / "example.assignment.json"));
}

TEST_CASE("pgs parser round trips the emitted example schema") {
  const SchemaGraph s = example_schema(/*postprocess=*/true);

  SUBCASE("strict carries datatypes, presence and cardinalities") {
    const PgsSchema p =
        testutil::parse_pgs(emit_pg_schema(s, PgStrictness::Strict));
    CHECK(p.strict);
    REQUIRE(p.node_types.size() == 4);
    REQUIRE(p.edge_types.size() == 4);

    const PgsNodeType& person = p.node_types[1];
    CHECK(person.ident == "PersonType");
    CHECK(person.labels == std::vector<std::string>{"Person"});
    REQUIRE(person.properties.size() == 3);
    CHECK(person.properties[0].key == "bday");
    CHECK(person.properties[0].datatype == "DATE");
    CHECK(!person.properties[0].optional);

    const PgsNodeType& post = p.node_types[3];
    CHECK(post.properties[0].optional);

    const PgsEdgeType& located = p.edge_types[2];
    CHECK(located.ident == "LOCATED_INType");
    CHECK(located.src_idents ==
          std::vector<std::string>{"Org_Type", "PersonType"});
    CHECK(located.tgt_idents == std::vector<std::string>{"PlaceType"});
    CHECK(located.cardinality == "N:1");
    CHECK(p.edge_types[0].cardinality == "0:N");  // KNOWS

    // every referenced endpoint ident is a declared node type
    std::set<std::string> declared;
    for (const auto& t : p.node_types) declared.insert(t.ident);
    for (const auto& e : p.edge_types) {
      for (const auto& i : e.src_idents) CHECK(declared.count(i) == 1);
      for (const auto& i : e.tgt_idents) CHECK(declared.count(i) == 1);
    }
  }
  SUBCASE("loose carries bare keys and no cardinalities") {
    const PgsSchema p =
        testutil::parse_pgs(emit_pg_schema(s, PgStrictness::Loose));
    CHECK(!p.strict);
    for (const auto& t : p.node_types)
      for (const auto& prop : t.properties) {
        CHECK(prop.datatype.empty());
        CHECK(!prop.optional);
      }
    for (const auto& e : p.edge_types) CHECK(e.cardinality.empty());
  }
}

TEST_CASE("abstract types render with the ABSTRACT keyword") {
  PropertyGraph g;
  g.add_node({"u1", {}, {{"x", "1"}, {"y", "2"}}});
  DiscoveryOptions opts;
  const SchemaGraph s = discover_schema(g, opts, /*postprocess=*/true);
  const std::string text = emit_pg_schema(s, PgStrictness::Strict);
  const PgsSchema p = testutil::parse_pgs(text);
  REQUIRE(p.node_types.size() == 1);
  CHECK(p.node_types[0].is_abstract);
  CHECK(p.node_types[0].ident == "ABSTRACT_0Type");
  CHECK(p.node_types[0].properties.size() == 2);
}

TEST_CASE("identifier sanitization avoids collisions") {
  SchemaGraph s;
  for (const std::string name : {"A.B", "A_B"}) {
    NodeType t;
    t.name = name;
    t.labels = {name};
    s.node_types.emplace(name, t);
  }
  const std::string text = emit_pg_schema(s, PgStrictness::Loose);
  const PgsSchema p = testutil::parse_pgs(text);
  REQUIRE(p.node_types.size() == 2);
  CHECK(p.node_types[0].ident != p.node_types[1].ident);
}

TEST_CASE("xsd of the example schema is well formed") {
  const SchemaGraph s = example_schema(/*postprocess=*/true);
  CHECK(xml_well_formed(emit_xsd(s)));
  CHECK(xml_well_formed(emit_xsd(SchemaGraph{})));
}

TEST_CASE("schema json round trips") {
  const SchemaGraph s = example_schema(/*postprocess=*/true);
  const std::string text = schema_to_json(s);
  const SchemaGraph back = schema_from_json(text);
  CHECK(back.node_types.size() == s.node_types.size());
  CHECK(back.edge_types.size() == s.edge_types.size());
  CHECK(back.postprocessed == s.postprocessed);
  for (const auto& [name, t] : s.node_types) {
    REQUIRE(back.node_types.count(name) == 1);
    CHECK(back.node_types.at(name).labels == t.labels);
    CHECK(back.node_types.at(name).properties == t.properties);
  }
  for (const auto& [name, t] : s.edge_types) {
    REQUIRE(back.edge_types.count(name) == 1);
    CHECK(back.edge_types.at(name).endpoints == t.endpoints);
    CHECK(back.edge_types.at(name).cardinality == t.cardinality);
    CHECK(back.edge_types.at(name).max_out == t.max_out);
    CHECK(back.edge_types.at(name).max_in == t.max_in);
  }
  // canonical: serializing the parse is byte identical
  CHECK(schema_to_json(back) == text);

  SchemaGraph with_assignment = back;
  assignment_from_json(assignment_to_json(s), with_assignment);
  CHECK(with_assignment.node_assignment == s.node_assignment);
  CHECK(with_assignment.edge_assignment == s.edge_assignment);
}

TEST_CASE("emission is deterministic across calls") {
  const SchemaGraph a = example_schema(/*postprocess=*/true);
  const SchemaGraph b = example_schema(/*postprocess=*/true);
  CHECK(emit_pg_schema(a, PgStrictness::Strict) ==
        emit_pg_schema(b, PgStrictness::Strict));
  CHECK(emit_xsd(a) == emit_xsd(b));
  CHECK(schema_to_json(a) == schema_to_json(b));
}

TEST_CASE("write_schema_files writes the expected set") {
  const auto dir = testutil::fresh_dir("serialize_files");

  SUBCASE("postprocessed schema writes all five files") {
    write_schema_files(example_schema(true), dir);
    for (const std::string f : {"schema.loose.pgs", "schema.strict.pgs",
                                "schema.xsd", "schema.json", "assignment.json"})
      CHECK(fs::exists(dir / f));
  }
  SUBCASE("raw schema skips the strict rendering") {
    write_schema_files(example_schema(false), dir);
    CHECK(fs::exists(dir / "schema.loose.pgs"));
    CHECK(!fs::exists(dir / "schema.strict.pgs"));
  }
  fs::remove_all(dir);
}
