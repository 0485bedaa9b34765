#include <doctest.h>

#include <sstream>

#include "hardy/io.hpp"

using namespace hardy;

TEST_CASE("graph JSON round trip") {
  const std::string text = R"({
    "vertices": [0, 1, 2, 3],
    "edges": [[0, 1, 1.0], [1, 2, 0.5], [2, 3, 1.25]],
    "potential": {"1": -0.5, "3": 2.0},
    "root": 0
  })";
  auto g = graph_from_json(text);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_weight(1, 2) == 0.5);
  CHECK(g.potential(1) == -0.5);
  CHECK(g.potential(0) == 0.0);  // absent entries mean zero
  CHECK(g.root() == 0);

  auto clone = graph_from_json(graph_to_json(g));
  CHECK(clone.vertex_count() == g.vertex_count());
  for (Vertex x : g.vertices()) {
    CHECK(clone.neighbors(x) == g.neighbors(x));
    CHECK(clone.potential(x) == g.potential(x));
  }
}

TEST_CASE("graph JSON validation") {
  CHECK_THROWS_AS(graph_from_json("not json"), Error);
  CHECK_THROWS_AS(graph_from_json(R"({"edges": [[0, 1, 1.0], [1, 0, 2.0]]})"), Error);
  CHECK_THROWS_AS(graph_from_json(R"({"edges": [[0, 1, -1.0]]})"), Error);
  // disconnected
  CHECK_THROWS_AS(graph_from_json(R"({"edges": [[0,1,1.0]], "vertices": [0,1,5]})"), Error);
}

TEST_CASE("double formatting round-trips") {
  for (double v : {0.1, 2.0 - 1.4142135623730951, 1e-300, 3.141592653589793, -7.25e17}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("csv output is deterministic and carries provenance") {
  auto render = [] {
    std::ostringstream out;
    CsvWriter csv(out, "cmd=test seed=42");
    csv.header({"a", "b"});
    csv.row({CsvWriter::cell(1.5), CsvWriter::cell(2L)});
    return out.str();
  };
  auto a = render(), b = render();
  CHECK(a == b);
  CHECK(a.find("# config=cmd=test seed=42 hash=") == 0);
  CHECK(a.find("a,b\n") != std::string::npos);
  CHECK(a.find("1.5,2\n") != std::string::npos);
}

TEST_CASE("fnv hash is stable") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("hardy") != fnv1a64("hardz"));
}
