#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <string>

#include "qgraph/graph.hpp"
#include "qgraph/io.hpp"

using namespace qgraph;

TEST_CASE("graph json round trip is exact") {
  MetricGraph g = build_graph(
      4, {{0, 1, 0.1 + 0.2}, {0, 2, 1.0 / 3.0}, {0, 3, 0.7071067811865476}},
      {{3, VertexCondition::Dirichlet}}, {{0, "c"}, {2, "leaf"}});
  Json j = graph_to_json(g);
  MetricGraph back = graph_from_json(j);
  REQUIRE(back.vertex_count() == 4);
  REQUIRE(back.edge_count() == 3);
  for (int e = 0; e < 3; ++e) {
    CHECK(back.edge(e).source == g.edge(e).source);
    CHECK(back.edge(e).target == g.edge(e).target);
    CHECK(back.edge(e).length == g.edge(e).length);  // bit-exact
  }
  CHECK(back.condition(3) == VertexCondition::Dirichlet);
  CHECK(*back.label(0) == "c");
  CHECK(*back.label(2) == "leaf");
  CHECK(!back.label(1).has_value());

  // serialize → parse → serialize is byte-stable
  CHECK(graph_to_json(back).dump() == j.dump());
}

TEST_CASE("parse_graph accepts the documented layout") {
  MetricGraph g = parse_graph(R"({
    "vertices": [{"id": 0, "label": "a"}, {"id": 1}],
    "edges": [{"source": 0, "target": 1, "length": 2.5}],
    "dirichlet": [1]
  })");
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge(0).length == 2.5);
  CHECK(g.condition(1) == VertexCondition::Dirichlet);
  CHECK(*g.label(0) == "a");
}

TEST_CASE("parse_graph rejects malformed input") {
  CHECK_THROWS_AS(parse_graph("not json"), ValidationError);
  CHECK_THROWS_AS(parse_graph("[1,2]"), ValidationError);
  CHECK_THROWS_AS(parse_graph(R"({"edges": []})"), ValidationError);
  // ids must form 0..n-1
  CHECK_THROWS_AS(parse_graph(R"({"vertices": [{"id": 0}, {"id": 2}], "edges": []})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices": [{"id": 0}, {"id": 0}], "edges": []})"),
                  ValidationError);
  // edge fields
  CHECK_THROWS_AS(
      parse_graph(R"({"vertices": [{"id": 0}], "edges": [{"source": 0, "target": 0}]})"),
      ValidationError);
  CHECK_THROWS_AS(parse_graph(
                      R"({"vertices": [{"id": 0}, {"id": 1}],
             "edges": [{"source": 0, "target": 1, "length": -1}]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_graph(
                      R"({"vertices": [{"id": 0}, {"id": 1}],
             "edges": [{"source": 0, "target": 5, "length": 1}]})"),
                  ValidationError);
  // dirichlet ids must exist
  CHECK_THROWS_AS(parse_graph(
                      R"({"vertices": [{"id": 0}, {"id": 1}],
             "edges": [{"source": 0, "target": 1, "length": 1}], "dirichlet": [4]})"),
                  ValidationError);
}

TEST_CASE("save and load through a file") {
  namespace fs = std::filesystem;
  fs::path p = fs::temp_directory_path() / "qgraph_io_test.json";
  MetricGraph g = build_graph(3, {{0, 1, 1.25}, {1, 2, 0.6180339887498949}});
  save_graph(g, p.string());
  MetricGraph back = load_graph(p.string());
  CHECK(back.edge(1).length == g.edge(1).length);
  std::remove(p.string().c_str());
  CHECK_THROWS_AS(load_graph("/nonexistent/definitely/missing.json"), ValidationError);
}
