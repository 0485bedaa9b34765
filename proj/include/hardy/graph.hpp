#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "hardy/errors.hpp"

namespace hardy {

/// Vertices are opaque 64-bit ids. Lattice families pack integer coordinate
/// tuples into the id in an order-preserving way (see families.hpp); abstract
/// finite graphs use dense non-negative integers.
using Vertex = std::uint64_t;

struct Neighbor {
  Vertex to;
  double weight;  // b(x,y) > 0

  friend bool operator==(const Neighbor& a, const Neighbor& b) {
    return a.to == b.to && a.weight == b.weight;
  }
};

/// Declared properties of procedural families. Infinite-graph properties
/// (transience, properness of the canonical quotients) cannot be decided from
/// finite samples, so built-in families declare them and user oracles are only
/// heuristically checked.
struct OracleMetadata {
  std::string family;
  bool transient = false;
  bool bounded_degree = false;
  bool standard_weights = false;
  bool proper_quotients = false;
};

enum class GraphKind { FiniteExplicit, ProceduralOracle };

/// Symmetric edge-weight structure b with potential q. Immutable after
/// construction; safe to share across threads. Finite graphs store each
/// undirected edge once (symmetry is exact by construction); procedural
/// graphs evaluate a locally finite neighbor generator.
class WeightedGraph {
 public:
  using NeighborFn = std::function<std::vector<Neighbor>(Vertex)>;
  using PotentialFn = std::function<double(Vertex)>;

  static WeightedGraph oracle(NeighborFn neighbors, PotentialFn potential, Vertex root,
                              OracleMetadata metadata);

  GraphKind kind() const;
  Vertex root() const;
  const OracleMetadata& metadata() const;

  /// Neighbor list of x, sorted by vertex id. For finite graphs vertices not
  /// in the graph have no neighbors.
  std::vector<Neighbor> neighbors(Vertex x) const;

  /// b(x,y); 0 when not adjacent.
  double edge_weight(Vertex x, Vertex y) const;

  /// sum_y b(x,y)
  double weighted_degree(Vertex x) const;

  double potential(Vertex x) const;

  // Finite graphs only.
  std::size_t vertex_count() const;
  const std::vector<Vertex>& vertices() const;  // BFS order from root
  bool contains(Vertex x) const;

 private:
  struct Impl;
  explicit WeightedGraph(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;

  friend WeightedGraph build_finite_graph(const std::vector<std::tuple<Vertex, Vertex, double>>&,
                                          const std::map<Vertex, double>&,
                                          std::optional<Vertex>, const std::vector<Vertex>&);
};

/// Builds a finite graph from an undirected edge list. Edges may be listed in
/// either orientation; listing both orientations with different weights is an
/// error. Weights must be positive, self-loops are rejected, and the result
/// must be connected.
WeightedGraph build_finite_graph(const std::vector<std::tuple<Vertex, Vertex, double>>& edges,
                                 const std::map<Vertex, double>& potential = {},
                                 std::optional<Vertex> root = {},
                                 const std::vector<Vertex>& extra_vertices = {});

/// Combinatorial ball of radius N around root, in BFS order with ties broken
/// by vertex id. Deterministic; this ordering fixes all sums and solver pivots.
std::vector<Vertex> ball(const WeightedGraph& graph, Vertex root, int radius);

/// Lazily computed, cached exhaustion by balls around a root.
class Exhaustion {
 public:
  Exhaustion(WeightedGraph graph, Vertex root);
  explicit Exhaustion(WeightedGraph graph);

  const WeightedGraph& graph() const { return graph_; }
  Vertex root() const { return root_; }

  /// B_radius; cached, thread-safe.
  std::vector<Vertex> ball(int radius) const;

 private:
  WeightedGraph graph_;
  Vertex root_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::vector<Vertex>> cache_;
};

/// Real-valued function on vertices: either a finitely supported map or a
/// closed-form oracle (optionally with a finite support hint). Evaluation is
/// deterministic; the finitely supported variant returns 0 off its support.
class GraphFunction {
 public:
  GraphFunction();  // zero
  static GraphFunction zero();
  static GraphFunction constant(double c);
  static GraphFunction from_map(std::unordered_map<Vertex, double> values);
  static GraphFunction from_fn(std::function<double(Vertex)> fn,
                               std::optional<std::vector<Vertex>> support_hint = std::nullopt);

  double operator()(Vertex x) const;

  bool finitely_supported() const;
  /// Sorted support (map keys or the declared hint). Raises InfiniteSupport
  /// when no finite support is declared or derivable.
  const std::vector<Vertex>& support() const;

  /// Pointwise scaling c*f. Preserves representation.
  GraphFunction scaled(double c) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// phi = profile o u0, as a closed-form function.
GraphFunction compose(std::function<double(double)> profile, const GraphFunction& u0);

struct AssumptionReport {
  double edge_ratio_sup = 0.0;              // sup over sampled edges of u0(x)/u0(y)
  Vertex ratio_argmax_hi = 0, ratio_argmax_lo = 0;
  std::map<double, std::size_t> level_multiplicity;  // u0 value -> cardinality in ball
  std::size_t max_level_multiplicity = 0;
  bool properness_advisory_only = true;     // finite samples cannot decide properness
};

/// Samples the anti-oscillation ratio sup_{x~y} u0(x)/u0(y) and a per-level-set
/// cardinality table of u0 on B_sample_radius. Advisory for infinite graphs.
AssumptionReport check_assumptions(const GraphFunction& u0, const WeightedGraph& graph,
                                   int sample_radius);

/// Materializes the restriction of a graph to B_radius as a finite explicit
/// graph (same weights and potential; no boundary terms are added).
WeightedGraph materialize(const WeightedGraph& graph, int radius);

}  // namespace hardy
