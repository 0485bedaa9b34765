#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "hardy/graph.hpp"

namespace hardy {

struct LinearSolveSpec {
  double tolerance = 1e-10;   // relative residual
  int max_iterations = 20000;
  bool deterministic_reduction = true;  // single-threaded fixed-order sums
};

enum class GreenMethod { DirichletExhaustion, ClosedForm, FourierLattice };

/// Positive minimal Green function data from a Dirichlet solve: L G = delta_pole
/// on (B_radius minus the Dirichlet set), zero outside. The canonical
/// normalization solves LG = delta for the graph Laplacian; the random-walk
/// normalization is deg(pole) * G.
struct GreenFunction {
  Vertex pole = 0;
  GreenMethod method = GreenMethod::DirichletExhaustion;
  std::vector<Vertex> region;  // solve region, BFS order
  std::unordered_map<Vertex, double> values;
  int radius = 0;
  double solver_residual = 0.0;
  int solver_iterations = 0;
  /// Max relative change on B_{radius/2} between the radius/2 and radius
  /// solves; NaN when the doubling check did not run.
  double last_doubling_rel_change = std::numeric_limits<double>::quiet_NaN();
  bool monotone_at_doubling = true;
  /// Properness of G on infinite graphs is an assumption, not a verified fact.
  bool assumed_proper = true;

  double operator()(Vertex x) const {
    auto it = values.find(x);
    return it == values.end() ? 0.0 : it->second;
  }
  GraphFunction as_function() const;
};

GreenFunction green_dirichlet(const WeightedGraph& graph, Vertex pole, int radius,
                              const LinearSolveSpec& spec = {},
                              const std::vector<Vertex>& dirichlet_set = {});

/// Repeated doubling until the max relative change on the half ball drops
/// below rel_change_stop (or max_radius is hit).
GreenFunction green_exhaustion(const WeightedGraph& graph, Vertex pole,
                               const LinearSolveSpec& spec = {},
                               const std::vector<Vertex>& dirichlet_set = {},
                               int start_radius = 8, int max_radius = 1 << 14,
                               double rel_change_stop = 1e-6);

struct QuadratureSpec {
  int nodes_per_axis = 128;  // >= 64
  int radial_nodes = 2048;
  int bump_power = 6;
};

/// Lattice Green function on Z^d (d >= 3), graph-Laplacian normalization:
/// G(x) = (2pi)^-d int_{[-pi,pi]^d} cos(x.theta) / (2d - 2 sum_i cos theta_i).
/// Product Gauss-Legendre quadrature on the folded cube [0,pi]^d with
/// subtract-and-add of the quadratic symbol approximation at theta = 0; the
/// subtracted radial part is added back via an exact 1D Bessel integral.
double green_fourier_lattice(int dim, std::span<const long> x, const QuadratureSpec& spec = {});

struct AsymptoticRow {
  long k;
  double green_at_x;
  double w;            // 2d - sum_{y~x} sqrt(G(y)/G(x))
  double w_times_k2;
};

/// Tabulates w(x) k^2 along the axis ray x = k e_{axis+1}.
std::vector<AsymptoticRow> green_asymptotic_check(int dim, const std::vector<long>& k_list,
                                                  const QuadratureSpec& spec = {}, int axis = 0);

/// (d-2)^2 / 4, the limit of w(x) |x|^2 on Z^d.
double lattice_asymptotic_limit(int dim);

}  // namespace hardy
