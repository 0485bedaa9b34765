#pragma once

#include <vector>

#include "hardy/graph.hpp"

namespace hardy {

struct QuadraticFormValue {
  double gradient_part = 0.0;   // (1/2) sum b(x,y) (phi(x)-phi(y))^2
  double potential_part = 0.0;  // sum q phi^2
  double total = 0.0;           // gradient_part + potential_part
};

struct SuperharmonicReport {
  bool positive = true;                 // u > 0 on the region
  bool is_superharmonic = true;         // Hu >= -tol everywhere on the region
  std::vector<Vertex> violations;       // Hu < -tol
  std::vector<Vertex> harmonic_except;  // |Hu| > tol
};

/// Formal operator H = L + q over a weighted graph. Pure functions over
/// immutable inputs; edge sums run in the deterministic BFS/sorted edge order.
class SchrodingerOperator {
 public:
  explicit SchrodingerOperator(WeightedGraph graph) : graph_(std::move(graph)) {}

  const WeightedGraph& graph() const { return graph_; }

  /// Hf(x) = sum_y b(x,y)(f(x)-f(y)) + q(x) f(x)
  double apply(const GraphFunction& f, Vertex x) const;

  /// Lf(x), the potential-free part.
  double laplacian(const GraphFunction& f, Vertex x) const;

  /// h(phi) for finitely supported phi. Sums extend over all edges meeting
  /// the support; total equals <H phi, phi> by Green's formula.
  QuadraticFormValue quadratic_form(const GraphFunction& phi) const;

  /// Partial evaluation of the form extension to C(X): edges with both ends
  /// in `region` plus the potential over `region`. Monotone nondecreasing in
  /// the region when q >= 0.
  QuadraticFormValue quadratic_form_partial(const GraphFunction& f,
                                            const std::vector<Vertex>& region) const;

  SuperharmonicReport superharmonic_report(const GraphFunction& u,
                                           const std::vector<Vertex>& region,
                                           double tol = 1e-10) const;

 private:
  WeightedGraph graph_;
};

/// h_v(phi,psi) = (1/2) sum b(x,y) v(x)v(y) (phi(x)-phi(y)) (psi(x)-psi(y)).
/// v must be strictly positive on every vertex touched by an edge of the sum.
double gst_form(const WeightedGraph& graph, const GraphFunction& v, const GraphFunction& phi,
                const GraphFunction& psi);

/// |h(phi) - h_v(phi/v) - sum f phi^2| with f = (Hv)/v, scaled by nothing;
/// the caller's contract is residual <= 1e-10 * (1 + |h(phi)|).
double gst_identity_residual(const SchrodingerOperator& H, const GraphFunction& v,
                             const GraphFunction& phi);

/// Relative residual of H(fg) = f Hg + g Lf - sum b(x,y) grad f grad g at x.
double product_rule_residual(const SchrodingerOperator& H, const GraphFunction& f,
                             const GraphFunction& g, Vertex x);

/// Relative residual of the square-root chain rule
///   2 (fg)^(1/2) H[(fg)^(1/2)] = f Hg + g Hf
///     + sum b [ sqrt(g) grad sqrt(f) - sqrt(f) grad sqrt(g) ]^2
/// at x; f, g must be strictly positive on the closed 1-neighborhood of x.
double chain_rule_residual(const SchrodingerOperator& H, const GraphFunction& f,
                           const GraphFunction& g, Vertex x);

}  // namespace hardy
