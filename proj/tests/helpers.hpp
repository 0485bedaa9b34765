#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "hardy/graph.hpp"

namespace hardy::testing {

// Seeded generator with an explicit 53-bit mapping so drawn values are stable
// across standard libraries.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }  // [0,1)
  double uniform(double a, double b) { return a + (b - a) * unit(); }
  double weight() { return 2.0 * (1.0 - unit()); }  // (0, 2]
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

enum class PotentialMode { Zero, Signed };

// Connected graph on 2..max_vertices vertices: a random spanning tree plus a
// few extra edges; weights in (0,2], q in [-1,1] when Signed.
inline WeightedGraph random_connected_graph(TestRng& rng, int max_vertices,
                                            PotentialMode mode = PotentialMode::Zero) {
  const std::uint64_t n = 2 + rng.below(static_cast<std::uint64_t>(max_vertices - 1));
  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<std::tuple<Vertex, Vertex, double>> edges;
  for (Vertex v = 1; v < n; ++v) {
    Vertex parent = rng.below(v);
    edges.emplace_back(parent, v, rng.weight());
    seen.insert({parent, v});
  }
  std::uint64_t extra = rng.below(n);
  for (std::uint64_t e = 0; e < extra; ++e) {
    Vertex i = rng.below(n), j = rng.below(n);
    if (i == j) continue;
    auto key = std::minmax(i, j);
    if (!seen.insert(key).second) continue;
    edges.emplace_back(key.first, key.second, rng.weight());
  }
  std::map<Vertex, double> q;
  if (mode == PotentialMode::Signed)
    for (Vertex v = 0; v < n; ++v) q[v] = rng.uniform(-1.0, 1.0);
  return build_finite_graph(edges, q, Vertex{0});
}

// Finitely supported function with entries uniform in [lo, hi] on a random
// nonempty subset of the graph's vertices.
inline GraphFunction random_supported_function(TestRng& rng, const WeightedGraph& graph,
                                               double lo, double hi) {
  const auto& vertices = graph.vertices();
  std::unordered_map<Vertex, double> values;
  for (Vertex v : vertices)
    if (rng.unit() < 0.7) values[v] = rng.uniform(lo, hi);
  if (values.empty()) values[vertices[rng.below(vertices.size())]] = rng.uniform(lo, hi);
  return GraphFunction::from_map(std::move(values));
}

// Strictly positive function on every vertex of a finite graph.
inline GraphFunction random_positive_function(TestRng& rng, const WeightedGraph& graph,
                                              double lo = 0.1, double hi = 10.0) {
  std::unordered_map<Vertex, double> values;
  for (Vertex v : graph.vertices()) values[v] = lo + (hi - lo) * rng.unit();
  auto map = values;
  return GraphFunction::from_fn([map, lo](Vertex x) {
    auto it = map.find(x);
    return it == map.end() ? lo : it->second;
  });
}

}  // namespace hardy::testing
