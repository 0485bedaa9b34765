#pragma once

#include <span>
#include <string>
#include <vector>

#include "hardy/graph.hpp"
#include "hardy/hardy_weight.hpp"
#include "hardy/schrodinger.hpp"

namespace hardy {

/// N_0 = {0, 1, 2, ...} with unit weights between consecutive integers,
/// zero potential, root 0.
WeightedGraph make_halfline();

/// The Dirichlet-at-0 restriction of the half-line: X = {1, 2, ...} with unit
/// weights and boundary potential q(1) = 1, root 1. The identity u(n) = n is
/// H-harmonic everywhere on X for this operator.
SchrodingerOperator halfline_hardy_operator();

/// The canonical optimal weight of the half-line, built from u(n) = n and
/// v = 1 via the supersolution construction.
HardyWeight halfline_optimal_weight();

/// Z^d with unit weights between l^1-neighbors, root at the origin.
WeightedGraph make_lattice(int dim);

/// Infinite tree with constant vertex degree, unit weights, root 0.
/// Exploratory family.
WeightedGraph make_regular_tree(int degree);

/// Restriction of a graph to X minus K with the induced boundary potential
/// q'(x) = q(x) + sum_{y in K} b(x,y). Finite graphs restrict to finite
/// graphs; oracles wrap the generator.
WeightedGraph dirichlet_restriction(const WeightedGraph& graph, const std::vector<Vertex>& K,
                                    Vertex new_root);

// Order-preserving lattice coordinate codec: 64/d bits per coordinate,
// offset-binary, big-endian concatenation (id order = lex coordinate order).
int lattice_coord_bits(int dim);
long lattice_coord_limit(int dim);  // coordinates lie in [-limit, limit)
Vertex lattice_encode(std::span<const long> coords);
std::vector<long> lattice_decode(int dim, Vertex id);

/// Closed-form function of lattice coordinates.
GraphFunction lattice_function(int dim, std::function<double(const std::vector<long>&)> fn);

}  // namespace hardy
