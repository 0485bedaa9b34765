#include "hardy/green.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <Eigen/Sparse>
#include <Eigen/IterativeLinearSolvers>

namespace hardy {

GraphFunction GreenFunction::as_function() const {
  auto values_copy = values;
  return GraphFunction::from_fn([values_copy](Vertex x) {
    auto it = values_copy.find(x);
    return it == values_copy.end() ? 0.0 : it->second;
  });
}

namespace {

struct DirichletSolve {
  std::vector<Vertex> region;
  std::unordered_map<Vertex, double> values;
  double residual = 0.0;
  int iterations = 0;
};

DirichletSolve solve_on_ball(const WeightedGraph& graph, Vertex pole, int radius,
                             const LinearSolveSpec& spec,
                             const std::set<Vertex>& dirichlet) {
  auto ball_vertices = ball(graph, graph.root(), radius);
  std::vector<Vertex> region;
  region.reserve(ball_vertices.size());
  for (Vertex v : ball_vertices)
    if (!dirichlet.count(v)) region.push_back(v);
  if (region.empty()) raise(ErrorCode::InvalidInput, "empty solve region");

  std::unordered_map<Vertex, int> index;
  index.reserve(region.size());
  for (std::size_t i = 0; i < region.size(); ++i) index[region[i]] = static_cast<int>(i);
  auto pole_it = index.find(pole);
  if (pole_it == index.end())
    raise(ErrorCode::InvalidInput, "pole lies outside the solve region");

  const int n = static_cast<int>(region.size());
  std::vector<Eigen::Triplet<double>> trips;
  bool has_boundary = false;
  for (int i = 0; i < n; ++i) {
    Vertex x = region[static_cast<std::size_t>(i)];
    double diag = 0.0;
    for (const auto& nb : graph.neighbors(x)) {
      diag += nb.weight;
      auto it = index.find(nb.to);
      if (it != index.end())
        trips.emplace_back(i, it->second, -nb.weight);
      else
        has_boundary = true;  // edge into the frozen-zero exterior / Dirichlet set
    }
    trips.emplace_back(i, i, diag);
  }
  if (!has_boundary)
    raise(ErrorCode::NotPositiveDefinite,
          "solve region has no boundary: the graph Laplacian is singular (graph-model bug?)");

  Eigen::SparseMatrix<double> L(n, n);
  L.setFromTriplets(trips.begin(), trips.end());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs[pole_it->second] = 1.0;

  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                           Eigen::DiagonalPreconditioner<double>>
      cg;
  cg.setTolerance(spec.tolerance);
  cg.setMaxIterations(spec.max_iterations);
  cg.compute(L);
  Eigen::VectorXd g = cg.solve(rhs);
  if (cg.info() != Eigen::Success) {
    std::ostringstream os;
    os << "conjugate gradient stalled at relative residual " << cg.error() << " after "
       << cg.iterations() << " iterations";
    raise(ErrorCode::SolverDivergence, os.str());
  }
  int iterations = static_cast<int>(cg.iterations());

  // Iterative refinement pushes the forward error toward the residual floor.
  double residual = (rhs - L * g).norm();
  for (int pass = 0; pass < 2 && residual > 1e-14; ++pass) {
    Eigen::VectorXd correction = cg.solve(rhs - L * g);
    if (cg.info() != Eigen::Success) break;
    g += correction;
    iterations += static_cast<int>(cg.iterations());
    residual = (rhs - L * g).norm();
  }

  DirichletSolve out;
  out.region = std::move(region);
  out.residual = residual;
  out.iterations = iterations;
  out.values.reserve(out.region.size());
  for (std::size_t i = 0; i < out.region.size(); ++i)
    out.values[out.region[i]] = g[static_cast<Eigen::Index>(i)];
  return out;
}

}  // namespace

GreenFunction green_dirichlet(const WeightedGraph& graph, Vertex pole, int radius,
                              const LinearSolveSpec& spec,
                              const std::vector<Vertex>& dirichlet_set) {
  std::set<Vertex> dirichlet(dirichlet_set.begin(), dirichlet_set.end());
  auto solve = solve_on_ball(graph, pole, radius, spec, dirichlet);

  GreenFunction out;
  out.pole = pole;
  out.method = GreenMethod::DirichletExhaustion;
  out.radius = radius;
  out.region = std::move(solve.region);
  out.values = std::move(solve.values);
  out.solver_residual = solve.residual;
  out.solver_iterations = solve.iterations;

  // Doubling check against the half-radius solve: values must be pointwise
  // nondecreasing on the overlap (Markov exhaustion property), and the
  // relative change is measured on the half ball of the smaller solve, where
  // interior values converge first. The outer shell is boundary-affected.
  int half = radius / 2;
  if (half >= 1) {
    auto half_vertices = ball(graph, graph.root(), half);
    bool pole_inside = false;
    for (Vertex v : half_vertices)
      if (v == pole && !dirichlet.count(v)) pole_inside = true;
    if (!pole_inside) {
      // half ball misses the pole; no comparable solve exists
    } else if (half_vertices.size() < out.region.size() + dirichlet.size()) {
      auto half_solve = solve_on_ball(graph, pole, half, spec, dirichlet);
      bool monotone = true;
      for (const auto& [v, gh] : half_solve.values) {
        double denom = std::max({std::abs(out(v)), std::abs(gh), 1e-300});
        if (gh > out(v) + 10.0 * spec.tolerance * denom) monotone = false;
      }
      double max_rel_change = 0.0;
      for (Vertex v : ball(graph, graph.root(), half / 2)) {
        if (dirichlet.count(v)) continue;
        double gh = half_solve.values.count(v) ? half_solve.values[v] : 0.0;
        double denom = std::max({std::abs(out(v)), std::abs(gh), 1e-300});
        max_rel_change = std::max(max_rel_change, std::abs(out(v) - gh) / denom);
      }
      out.last_doubling_rel_change = max_rel_change;
      out.monotone_at_doubling = monotone;
    } else {
      out.last_doubling_rel_change = 0.0;  // half ball already covers the region
    }
  }
  return out;
}

GreenFunction green_exhaustion(const WeightedGraph& graph, Vertex pole,
                               const LinearSolveSpec& spec,
                               const std::vector<Vertex>& dirichlet_set, int start_radius,
                               int max_radius, double rel_change_stop) {
  int radius = std::max(1, start_radius);
  GreenFunction g = green_dirichlet(graph, pole, radius, spec, dirichlet_set);
  while (radius < max_radius) {
    radius *= 2;
    GreenFunction next = green_dirichlet(graph, pole, radius, spec, dirichlet_set);
    if (!std::isnan(next.last_doubling_rel_change) &&
        next.last_doubling_rel_change < rel_change_stop)
      return next;
    if (next.values.size() == g.values.size()) return next;  // graph exhausted
    g = std::move(next);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Fourier quadrature on Z^d

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration; deterministic.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

void gauss_legendre_on(double a, double b, int n, std::vector<double>& nodes,
                       std::vector<double>& weights) {
  gauss_legendre(n, nodes, weights);
  for (int i = 0; i < n; ++i) {
    nodes[static_cast<std::size_t>(i)] = 0.5 * (b - a) * nodes[static_cast<std::size_t>(i)] + 0.5 * (a + b);
    weights[static_cast<std::size_t>(i)] *= 0.5 * (b - a);
  }
}

// u^(1-d/2) J_{d/2-1}(u), the spherical plane-wave average up to (2pi)^(d/2).
double bessel_kernel(int d, double u) {
  const double nu = 0.5 * d - 1.0;
  if (u < 1e-6) {
    // u^(1-d/2) * (u/2)^nu / Gamma(nu+1) * (1 - u^2/(4(nu+1)) + ...)
    return std::pow(0.5, nu) / std::tgamma(nu + 1.0) * (1.0 - u * u / (4.0 * (nu + 1.0)));
  }
  if (d == 3)  // J_{1/2}(u) = sqrt(2/(pi u)) sin u
    return std::sqrt(2.0 / std::numbers::pi) * std::sin(u) / u;
  return std::pow(u, 1.0 - 0.5 * d) * std::cyl_bessel_j(nu, u);
}

double ipow(double base, int exp) {
  double out = 1.0;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

struct FourierWorkspace {
  int d;
  int n;
  int p;
  std::vector<double> t, wt, cos_t;
  std::vector<std::vector<double>> cos_xt;  // per axis
};

// Recursive tensor-product sweep accumulating sum_t2, sum_cos and the product
// of per-axis cos(x_i t_i) * weight.
double sweep(const FourierWorkspace& ws, int axis, double sum_t2, double sum_cos,
             double factor) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  double acc = 0.0;
  if (axis == ws.d - 1) {
    for (int i = 0; i < ws.n; ++i) {
      double r2 = sum_t2 + ws.t[static_cast<std::size_t>(i)] * ws.t[static_cast<std::size_t>(i)];
      double s = 2.0 * ws.d - 2.0 * (sum_cos + ws.cos_t[static_cast<std::size_t>(i)]);
      double rr = r2 / pi2;
      double chi = rr < 1.0 ? ipow(1.0 - rr, ws.p) : 0.0;
      double integrand = 1.0 / s - chi / r2;
      acc += factor * ws.wt[static_cast<std::size_t>(i)] *
             ws.cos_xt[static_cast<std::size_t>(axis)][static_cast<std::size_t>(i)] * integrand;
    }
    return acc;
  }
  for (int i = 0; i < ws.n; ++i) {
    double ti = ws.t[static_cast<std::size_t>(i)];
    acc += sweep(ws, axis + 1, sum_t2 + ti * ti, sum_cos + ws.cos_t[static_cast<std::size_t>(i)],
                 factor * ws.wt[static_cast<std::size_t>(i)] *
                     ws.cos_xt[static_cast<std::size_t>(axis)][static_cast<std::size_t>(i)]);
  }
  return acc;
}

}  // namespace

double green_fourier_lattice(int dim, std::span<const long> x, const QuadratureSpec& spec) {
  if (dim < 3)
    raise(ErrorCode::DomainError,
          "lattice Green function needs d >= 3 (Z^1, Z^2 are recurrent)");
  if (static_cast<int>(x.size()) != dim)
    raise(ErrorCode::InvalidInput, "point dimension does not match the lattice dimension");
  if (spec.nodes_per_axis < 64)
    raise(ErrorCode::InvalidInput, "quadrature needs at least 64 nodes per axis");
  if (spec.radial_nodes < 16) raise(ErrorCode::InvalidInput, "too few radial nodes");
  if (spec.bump_power < 2) raise(ErrorCode::InvalidInput, "bump power must be >= 2");

  const double pi = std::numbers::pi;
  FourierWorkspace ws;
  ws.d = dim;
  ws.n = spec.nodes_per_axis;
  ws.p = spec.bump_power;
  gauss_legendre_on(0.0, pi, ws.n, ws.t, ws.wt);
  ws.cos_t.resize(static_cast<std::size_t>(ws.n));
  for (int i = 0; i < ws.n; ++i)
    ws.cos_t[static_cast<std::size_t>(i)] = std::cos(ws.t[static_cast<std::size_t>(i)]);
  ws.cos_xt.assign(static_cast<std::size_t>(dim), std::vector<double>(static_cast<std::size_t>(ws.n)));
  for (int a = 0; a < dim; ++a)
    for (int i = 0; i < ws.n; ++i)
      ws.cos_xt[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] =
          std::cos(static_cast<double>(x[static_cast<std::size_t>(a)]) * ws.t[static_cast<std::size_t>(i)]);

  const double two_pi_pow = std::pow(2.0 * pi, dim);
  double term_a = std::pow(2.0, dim) / two_pi_pow * sweep(ws, 0, 0.0, 0.0, 1.0);

  // Radial add-back of the subtracted chi(r)/r^2 over R^d (chi lives in the
  // inscribed ball, so the cube and R^d integrals coincide):
  //   (2pi)^(-d) * (2pi)^(d/2) * |x|^... int_0^pi chi(r) r^(d-3) K(|x| r) dr
  double norm2 = 0.0;
  for (long xi : x) norm2 += static_cast<double>(xi) * static_cast<double>(xi);
  const double xa = std::sqrt(norm2);
  std::vector<double> r, wr;
  gauss_legendre_on(0.0, pi, spec.radial_nodes, r, wr);
  double radial = 0.0;
  for (int i = 0; i < spec.radial_nodes; ++i) {
    double ri = r[static_cast<std::size_t>(i)];
    double chi = ipow(1.0 - (ri * ri) / (pi * pi), ws.p);
    radial += wr[static_cast<std::size_t>(i)] * chi * std::pow(ri, dim - 3) *
              bessel_kernel(dim, xa * ri);
  }
  double term_b = std::pow(2.0 * pi, 0.5 * dim) / two_pi_pow * radial;
  return term_a + term_b;
}

std::vector<AsymptoticRow> green_asymptotic_check(int dim, const std::vector<long>& k_list,
                                                  const QuadratureSpec& spec, int axis) {
  if (axis < 0 || axis >= dim) raise(ErrorCode::InvalidInput, "axis out of range");
  std::map<std::vector<long>, double> cache;
  auto green_at = [&](std::vector<long> pt) {
    // canonicalize by symmetry: |coords|, sorted descending
    std::vector<long> key = pt;
    for (auto& c : key) c = std::labs(c);
    std::sort(key.begin(), key.end(), std::greater<long>());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, green_fourier_lattice(dim, key, spec)).first;
    return it->second;
  };

  std::vector<AsymptoticRow> rows;
  rows.reserve(k_list.size());
  for (long k : k_list) {
    std::vector<long> x(static_cast<std::size_t>(dim), 0);
    x[static_cast<std::size_t>(axis)] = k;
    double gx = green_at(x);

    double sum_ratio = 0.0;
    for (int a = 0; a < dim; ++a) {
      for (int sgn : {-1, +1}) {
        auto y = x;
        y[static_cast<std::size_t>(a)] += sgn;
        sum_ratio += std::sqrt(green_at(y) / gx);
      }
    }
    double w = 2.0 * dim - sum_ratio;
    rows.push_back({k, gx, w, w * static_cast<double>(k) * static_cast<double>(k)});
  }
  return rows;
}

double lattice_asymptotic_limit(int dim) {
  double c = static_cast<double>(dim) - 2.0;
  return c * c / 4.0;
}

}  // namespace hardy
