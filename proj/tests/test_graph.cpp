#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hardy/families.hpp"
#include "hardy/graph.hpp"
#include "helpers.hpp"

using namespace hardy;
using hardy::testing::TestRng;

TEST_CASE("path graph 0-1-2 with unit weights") {
  auto g = build_finite_graph({{0, 1, 1.0}, {1, 2, 1.0}});
  CHECK(g.vertex_count() == 3);
  CHECK(g.neighbors(1).size() == 2);
  CHECK(g.weighted_degree(1) == 2.0);
  CHECK(g.weighted_degree(0) == 1.0);
  CHECK(g.edge_weight(0, 1) == 1.0);
  CHECK(g.edge_weight(0, 2) == 0.0);
  CHECK(g.potential(1) == 0.0);
}

TEST_CASE("contradictory orientations raise AsymmetricInput") {
  CHECK_THROWS_WITH_AS(build_finite_graph({{0, 1, 1.0}, {1, 0, 2.0}}),
                       doctest::Contains("AsymmetricInput"), Error);
  // duplicate listing with equal weight is accepted as the symmetric closure
  auto g = build_finite_graph({{0, 1, 1.5}, {1, 0, 1.5}});
  CHECK(g.edge_weight(1, 0) == 1.5);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(build_finite_graph({{0, 1, 0.0}}), Error);
  CHECK_THROWS_AS(build_finite_graph({{0, 1, -2.0}}), Error);
  CHECK_THROWS_AS(build_finite_graph({{0, 0, 1.0}}), Error);
  try {
    build_finite_graph({{0, 1, 1.0}, {2, 3, 1.0}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Disconnected);
  }
}

TEST_CASE("single-vertex graph is accepted as a degenerate fixture") {
  auto g = build_finite_graph({}, {{7, 2.5}}, Vertex{7});
  CHECK(g.vertex_count() == 1);
  CHECK(g.potential(7) == 2.5);
  CHECK(g.neighbors(7).empty());
}

TEST_CASE("balls on the half-line") {
  auto g = make_halfline();
  auto b3 = ball(g, 0, 3);
  CHECK(b3 == std::vector<Vertex>{0, 1, 2, 3});
}

TEST_CASE("lattice ball counts in Z^3") {
  auto g = make_lattice(3);
  CHECK(ball(g, g.root(), 1).size() == 7);

  // independent count of |{x : |x|_1 <= 2}| in 3 dimensions
  int count = 0;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c)
        if (std::abs(a) + std::abs(b) + std::abs(c) <= 2) ++count;
  CHECK(count == 25);
  CHECK(ball(g, g.root(), 2).size() == 25);
}

TEST_CASE("balls nest and grow strictly until exhaustion") {
  TestRng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = hardy::testing::random_connected_graph(rng, 30);
    std::size_t previous = 0;
    for (int r = 0; r <= 8; ++r) {
      auto b = ball(g, 0, r);
      auto next = ball(g, 0, r + 1);
      CHECK(std::includes(next.begin(), next.end(), b.begin(), b.end()));
      if (b.size() == previous) {
        CHECK(b.size() == g.vertex_count());  // component exhausted
        break;
      }
      CHECK(b.size() > previous);
      previous = b.size();
    }
  }
}

TEST_CASE("exhaustion caches and repeats deterministically") {
  Exhaustion ex(make_halfline());
  CHECK(ex.ball(5) == ex.ball(5));
  CHECK(ex.ball(2).size() == 3);
}

TEST_CASE("materialized half-line matches the oracle on the common ball") {
  auto oracle = make_halfline();
  auto finite = materialize(oracle, 16);
  CHECK(finite.vertex_count() == 17);
  auto b = ball(oracle, 0, 16);
  std::set<Vertex> inside(b.begin(), b.end());
  for (Vertex x : finite.vertices()) {
    auto expect = oracle.neighbors(x);
    std::erase_if(expect, [&](const Neighbor& n) { return !inside.count(n.to); });
    CHECK(finite.neighbors(x) == expect);
  }
  // and back again through a second materialization
  auto again = materialize(finite, 16);
  for (Vertex x : finite.vertices()) CHECK(again.neighbors(x) == finite.neighbors(x));
}

TEST_CASE("check_assumptions on the half-line identity") {
  auto H = halfline_hardy_operator();
  auto u0 = GraphFunction::from_fn([](Vertex x) { return static_cast<double>(x); });
  auto report = check_assumptions(u0, H.graph(), 100);
  CHECK(report.edge_ratio_sup == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(report.ratio_argmax_hi == 2);
  CHECK(report.ratio_argmax_lo == 1);
  CHECK(report.max_level_multiplicity == 1);
  CHECK(report.properness_advisory_only);
}

TEST_CASE("check_assumptions on a constant function") {
  auto report = check_assumptions(GraphFunction::constant(1.0), make_halfline(), 50);
  CHECK(report.edge_ratio_sup == 1.0);
  CHECK(report.max_level_multiplicity == 51);  // single level holds the whole ball
}

TEST_CASE("check_assumptions rejects nonpositive u0") {
  auto u0 = GraphFunction::from_fn([](Vertex x) { return static_cast<double>(x) - 3.0; });
  CHECK_THROWS_AS(check_assumptions(u0, make_halfline(), 10), Error);
}

TEST_CASE("bounded-degree superharmonic ratio bound") {
  // On a standard-weight graph, positive superharmonic functions have
  // neighbor ratios bounded by the degree.
  auto g = make_lattice(3);
  SchrodingerOperator H{g};
  // u = 1 + 1/(1+|x|_1) is positive; sample the ratio bound deg(x) = 6
  auto u = lattice_function(3, [](const std::vector<long>& c) {
    long s = std::labs(c[0]) + std::labs(c[1]) + std::labs(c[2]);
    return 1.0 + 1.0 / (1.0 + static_cast<double>(s));
  });
  auto report = check_assumptions(u, g, 4);
  CHECK(report.edge_ratio_sup <= 6.0);
}

TEST_CASE("lattice codec round-trips and preserves order") {
  std::vector<long> p{-3, 7, 0};
  CHECK(lattice_decode(3, lattice_encode(p)) == p);
  std::vector<long> q{-3, 7, 1};
  CHECK(lattice_encode(p) < lattice_encode(q));
  std::vector<long> r{-2, -100, -5};
  CHECK(lattice_encode(p) < lattice_encode(r));  // lex order on coordinates
  for (int d = 1; d <= 6; ++d) {
    std::vector<long> x(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) x[static_cast<std::size_t>(i)] = (i % 2 ? -1 : 1) * (i + 1);
    CHECK(lattice_decode(d, lattice_encode(x)) == x);
  }
  std::vector<long> out_of_range{1L << 40, 0, 0};
  CHECK_THROWS_AS(lattice_encode(out_of_range), Error);
}

TEST_CASE("graph function representations") {
  auto f = GraphFunction::from_map({{3, 1.5}, {5, -2.0}});
  CHECK(f(3) == 1.5);
  CHECK(f(4) == 0.0);
  CHECK(f.finitely_supported());
  CHECK(f.support() == std::vector<Vertex>{3, 5});
  CHECK(f.scaled(2.0)(5) == -4.0);

  auto g = GraphFunction::from_fn([](Vertex x) { return static_cast<double>(x * x); });
  CHECK_FALSE(g.finitely_supported());
  CHECK_THROWS_AS(g.support(), Error);

  auto composed = compose([](double t) { return 2.0 * t; }, g);
  CHECK(composed(3) == 18.0);
}

TEST_CASE("dirichlet restriction of the half-line matches the boundary potential") {
  auto restricted = dirichlet_restriction(make_halfline(), {0}, 1);
  CHECK(restricted.potential(1) == 1.0);
  CHECK(restricted.potential(2) == 0.0);
  CHECK(restricted.neighbors(1).size() == 1);  // only the edge to 2 remains
  auto H = halfline_hardy_operator();
  for (Vertex x : {Vertex{1}, Vertex{2}, Vertex{9}}) {
    CHECK(restricted.potential(x) == H.graph().potential(x));
    CHECK(restricted.neighbors(x) == H.graph().neighbors(x));
  }
}
