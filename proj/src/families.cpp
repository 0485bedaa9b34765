#include "hardy/families.hpp"

#include <algorithm>
#include <set>

namespace hardy {

WeightedGraph make_halfline() {
  OracleMetadata meta;
  meta.family = "halfline";
  meta.bounded_degree = true;
  meta.standard_weights = true;
  meta.proper_quotients = true;
  auto neighbors = [](Vertex x) {
    std::vector<Neighbor> out;
    if (x > 0) out.push_back({x - 1, 1.0});
    out.push_back({x + 1, 1.0});
    return out;
  };
  return WeightedGraph::oracle(neighbors, nullptr, 0, meta);
}

SchrodingerOperator halfline_hardy_operator() {
  OracleMetadata meta;
  meta.family = "halfline-dirichlet";
  meta.bounded_degree = true;
  meta.standard_weights = true;
  meta.proper_quotients = true;
  meta.transient = true;  // Dirichlet boundary at 0 makes the walk transient
  auto neighbors = [](Vertex x) {
    std::vector<Neighbor> out;
    if (x > 1) out.push_back({x - 1, 1.0});
    out.push_back({x + 1, 1.0});
    return out;
  };
  auto potential = [](Vertex x) { return x == 1 ? 1.0 : 0.0; };
  return SchrodingerOperator(WeightedGraph::oracle(neighbors, potential, 1, meta));
}

HardyWeight halfline_optimal_weight() {
  auto H = halfline_hardy_operator();
  GraphFunction u = GraphFunction::from_fn([](Vertex x) { return static_cast<double>(x); });
  GraphFunction v = GraphFunction::constant(1.0);
  ConstructOptions options;
  options.verification_radius = 64;
  return construct_weight(H, u, v, options);
}

int lattice_coord_bits(int dim) {
  if (dim < 1) raise(ErrorCode::InvalidInput, "lattice dimension must be >= 1");
  if (dim > 16) raise(ErrorCode::UnsupportedFamily, "lattice dimension too large for the codec");
  return std::min(64 / dim, 62);
}

long lattice_coord_limit(int dim) { return 1L << (lattice_coord_bits(dim) - 1); }

Vertex lattice_encode(std::span<const long> coords) {
  int dim = static_cast<int>(coords.size());
  int bits = lattice_coord_bits(dim);
  long limit = lattice_coord_limit(dim);
  Vertex id = 0;
  for (long c : coords) {
    if (c < -limit || c >= limit)
      raise(ErrorCode::InvalidInput, "lattice coordinate out of codec range");
    id = (id << bits) | static_cast<Vertex>(c + limit);
  }
  return id;
}

std::vector<long> lattice_decode(int dim, Vertex id) {
  int bits = lattice_coord_bits(dim);
  long limit = lattice_coord_limit(dim);
  Vertex mask = (bits == 64) ? ~Vertex{0} : ((Vertex{1} << bits) - 1);
  std::vector<long> coords(static_cast<std::size_t>(dim));
  for (int i = dim - 1; i >= 0; --i) {
    coords[static_cast<std::size_t>(i)] = static_cast<long>(id & mask) - limit;
    id >>= bits;
  }
  return coords;
}

WeightedGraph make_lattice(int dim) {
  if (dim < 1) raise(ErrorCode::InvalidInput, "lattice dimension must be >= 1");
  lattice_coord_bits(dim);  // validates
  OracleMetadata meta;
  meta.family = "lattice(" + std::to_string(dim) + ")";
  meta.bounded_degree = true;
  meta.standard_weights = true;
  meta.transient = dim >= 3;
  meta.proper_quotients = dim >= 3;  // 1/G is proper on Z^d, d >= 3
  auto neighbors = [dim](Vertex x) {
    auto coords = lattice_decode(dim, x);
    std::vector<Neighbor> out;
    out.reserve(static_cast<std::size_t>(2 * dim));
    for (int a = 0; a < dim; ++a) {
      for (long sgn : {-1L, +1L}) {
        auto y = coords;
        y[static_cast<std::size_t>(a)] += sgn;
        out.push_back({lattice_encode(y), 1.0});
      }
    }
    return out;
  };
  std::vector<long> origin(static_cast<std::size_t>(dim), 0);
  return WeightedGraph::oracle(neighbors, nullptr, lattice_encode(origin), meta);
}

WeightedGraph make_regular_tree(int degree) {
  if (degree < 3)
    raise(ErrorCode::InvalidInput, "regular tree needs degree >= 3 to be transient");
  OracleMetadata meta;
  meta.family = "regular-tree(" + std::to_string(degree) + ")";
  meta.bounded_degree = true;
  meta.standard_weights = true;
  meta.transient = true;
  // Heap-style ids: root 0 has children 1..d; vertex v >= 1 has the d-1
  // children (v-1)(d-1) + d + 1 ... + (d-1).
  const Vertex d = static_cast<Vertex>(degree);
  auto neighbors = [d](Vertex v) {
    std::vector<Neighbor> out;
    if (v == 0) {
      for (Vertex c = 1; c <= d; ++c) out.push_back({c, 1.0});
      return out;
    }
    Vertex parent = (v <= d) ? 0 : (v - d - 1) / (d - 1) + 1;
    out.push_back({parent, 1.0});
    Vertex first = (v - 1) * (d - 1) + d + 1;
    for (Vertex c = first; c < first + (d - 1); ++c) out.push_back({c, 1.0});
    return out;
  };
  return WeightedGraph::oracle(neighbors, nullptr, 0, meta);
}

WeightedGraph dirichlet_restriction(const WeightedGraph& graph, const std::vector<Vertex>& K,
                                    Vertex new_root) {
  std::set<Vertex> removed(K.begin(), K.end());
  if (removed.count(new_root))
    raise(ErrorCode::InvalidInput, "new root lies in the removed set");

  if (graph.kind() == GraphKind::FiniteExplicit) {
    std::vector<std::tuple<Vertex, Vertex, double>> edges;
    std::map<Vertex, double> potential;
    std::vector<Vertex> keep;
    for (Vertex x : graph.vertices()) {
      if (removed.count(x)) continue;
      keep.push_back(x);
      double q = graph.potential(x);
      for (const auto& n : graph.neighbors(x)) {
        if (removed.count(n.to))
          q += n.weight;
        else if (x < n.to)
          edges.emplace_back(x, n.to, n.weight);
      }
      if (q != 0.0) potential[x] = q;
    }
    return build_finite_graph(edges, potential, new_root, keep);
  }

  auto base_neighbors = [graph](Vertex x) { return graph.neighbors(x); };
  auto neighbors = [base_neighbors, removed](Vertex x) {
    std::vector<Neighbor> out;
    for (const auto& n : base_neighbors(x))
      if (!removed.count(n.to)) out.push_back(n);
    return out;
  };
  auto potential = [graph, removed](Vertex x) {
    double q = graph.potential(x);
    for (const auto& n : graph.neighbors(x))
      if (removed.count(n.to)) q += n.weight;
    return q;
  };
  OracleMetadata meta = graph.metadata();
  meta.family += "-dirichlet";
  return WeightedGraph::oracle(neighbors, potential, new_root, meta);
}

GraphFunction lattice_function(int dim, std::function<double(const std::vector<long>&)> fn) {
  return GraphFunction::from_fn(
      [dim, fn](Vertex x) { return fn(lattice_decode(dim, x)); });
}

}  // namespace hardy
