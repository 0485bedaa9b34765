#include "hardy/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hardy {

double SchrodingerOperator::laplacian(const GraphFunction& f, Vertex x) const {
  double fx = f(x);
  double acc = 0.0;
  for (const auto& n : graph_.neighbors(x)) acc += n.weight * (fx - f(n.to));
  return acc;
}

double SchrodingerOperator::apply(const GraphFunction& f, Vertex x) const {
  return laplacian(f, x) + graph_.potential(x) * f(x);
}

QuadraticFormValue SchrodingerOperator::quadratic_form(const GraphFunction& phi) const {
  const auto& supp = phi.support();  // raises InfiniteSupport when absent
  std::set<Vertex> in_supp(supp.begin(), supp.end());

  QuadraticFormValue out;
  // Undirected edges meeting the support, visited once each: the 1/2
  // double-counting factor is realized by the x < y rule inside the support.
  for (Vertex x : supp) {
    double px = phi(x);
    for (const auto& n : graph_.neighbors(x)) {
      if (in_supp.count(n.to)) {
        if (x < n.to) {
          double d = px - phi(n.to);
          out.gradient_part += n.weight * d * d;
        }
      } else {
        out.gradient_part += n.weight * px * px;  // phi = 0 outside support
      }
    }
    out.potential_part += graph_.potential(x) * px * px;
  }
  out.total = out.gradient_part + out.potential_part;
  return out;
}

QuadraticFormValue SchrodingerOperator::quadratic_form_partial(
    const GraphFunction& f, const std::vector<Vertex>& region) const {
  std::set<Vertex> in_region(region.begin(), region.end());
  QuadraticFormValue out;
  for (Vertex x : region) {
    double fx = f(x);
    for (const auto& n : graph_.neighbors(x)) {
      if (x < n.to && in_region.count(n.to)) {
        double d = fx - f(n.to);
        out.gradient_part += n.weight * d * d;
      }
    }
    out.potential_part += graph_.potential(x) * fx * fx;
  }
  out.total = out.gradient_part + out.potential_part;
  return out;
}

SuperharmonicReport SchrodingerOperator::superharmonic_report(const GraphFunction& u,
                                                              const std::vector<Vertex>& region,
                                                              double tol) const {
  SuperharmonicReport report;
  for (Vertex x : region) {
    double ux = u(x);
    if (!(ux > 0.0)) report.positive = false;
    double hu = 0.0;
    double scale = 1.0 + std::abs(graph_.potential(x) * ux);
    for (const auto& n : graph_.neighbors(x)) {
      hu += n.weight * (ux - u(n.to));
      scale += n.weight * (std::abs(ux) + std::abs(u(n.to)));
    }
    hu += graph_.potential(x) * ux;
    if (hu < -tol * scale) {
      report.violations.push_back(x);
      report.is_superharmonic = false;
    }
    if (std::abs(hu) > tol * scale) report.harmonic_except.push_back(x);
  }
  return report;
}

namespace {

// Deterministic enumeration of undirected edges meeting supp(phi) u supp(psi).
template <typename EdgeFn>
void for_edges_meeting(const WeightedGraph& graph, const std::vector<Vertex>& vertices,
                       EdgeFn&& fn) {
  std::set<Vertex> in_set(vertices.begin(), vertices.end());
  for (Vertex x : vertices) {
    for (const auto& n : graph.neighbors(x)) {
      if (in_set.count(n.to)) {
        if (x < n.to) fn(x, n.to, n.weight);
      } else {
        fn(x, n.to, n.weight);
      }
    }
  }
}

std::vector<Vertex> merged_support(const GraphFunction& a, const GraphFunction& b) {
  std::vector<Vertex> out = a.support();
  const auto& sb = b.support();
  out.insert(out.end(), sb.begin(), sb.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

double gst_form(const WeightedGraph& graph, const GraphFunction& v, const GraphFunction& phi,
                const GraphFunction& psi) {
  auto supp = merged_support(phi, psi);
  double acc = 0.0;
  for_edges_meeting(graph, supp, [&](Vertex x, Vertex y, double w) {
    double vx = v(x), vy = v(y);
    if (!(vx > 0.0) || !(vy > 0.0))
      raise(ErrorCode::NonpositiveGroundState,
            "v must be strictly positive on the edge {" + std::to_string(x) + "," +
                std::to_string(y) + "}");
    acc += w * vx * vy * (phi(x) - phi(y)) * (psi(x) - psi(y));
  });
  return acc;
}

double gst_identity_residual(const SchrodingerOperator& H, const GraphFunction& v,
                             const GraphFunction& phi) {
  const auto& supp = phi.support();
  for (Vertex x : supp)
    if (!(v(x) > 0.0))
      raise(ErrorCode::NonpositiveGroundState, "v(" + std::to_string(x) + ") <= 0");

  double h_phi = H.quadratic_form(phi).total;
  GraphFunction phi_over_v = GraphFunction::from_fn(
      [v, phi](Vertex x) { return phi(x) / v(x); }, supp);
  double twisted = gst_form(H.graph(), v, phi_over_v, phi_over_v);
  double potential_term = 0.0;
  for (Vertex x : supp) {
    double f = H.apply(v, x) / v(x);
    potential_term += f * phi(x) * phi(x);
  }
  return std::abs(h_phi - twisted - potential_term);
}

double product_rule_residual(const SchrodingerOperator& H, const GraphFunction& f,
                             const GraphFunction& g, Vertex x) {
  GraphFunction fg = GraphFunction::from_fn([f, g](Vertex y) { return f(y) * g(y); });
  double lhs = H.apply(fg, x);
  double cross = 0.0;
  double fx = f(x), gx = g(x);
  for (const auto& n : H.graph().neighbors(x))
    cross += n.weight * (fx - f(n.to)) * (gx - g(n.to));
  double rhs = fx * H.apply(g, x) + gx * H.laplacian(f, x) - cross;
  double scale = 1.0 + std::max({std::abs(lhs), std::abs(fx * H.apply(g, x)),
                                 std::abs(gx * H.laplacian(f, x)), std::abs(cross)});
  return std::abs(lhs - rhs) / scale;
}

double chain_rule_residual(const SchrodingerOperator& H, const GraphFunction& f,
                           const GraphFunction& g, Vertex x) {
  if (!(f(x) > 0.0) || !(g(x) > 0.0))
    raise(ErrorCode::NonpositiveInput, "f, g must be strictly positive at x");
  for (const auto& n : H.graph().neighbors(x))
    if (!(f(n.to) > 0.0) || !(g(n.to) > 0.0))
      raise(ErrorCode::NonpositiveInput, "f, g must be strictly positive on neighbors of x");

  GraphFunction root_fg =
      GraphFunction::from_fn([f, g](Vertex y) { return std::sqrt(f(y) * g(y)); });
  double lhs = 2.0 * root_fg(x) * H.apply(root_fg, x);

  double bracket_sum = 0.0;
  double sfx = std::sqrt(f(x)), sgx = std::sqrt(g(x));
  for (const auto& n : H.graph().neighbors(x)) {
    double t = sgx * (sfx - std::sqrt(f(n.to))) - sfx * (sgx - std::sqrt(g(n.to)));
    bracket_sum += n.weight * t * t;
  }
  double t1 = f(x) * H.apply(g, x);
  double t2 = g(x) * H.apply(f, x);
  double rhs = t1 + t2 + bracket_sum;
  double scale = 1.0 + std::max({std::abs(lhs), std::abs(t1), std::abs(t2), bracket_sum});
  return std::abs(lhs - rhs) / scale;
}

}  // namespace hardy
