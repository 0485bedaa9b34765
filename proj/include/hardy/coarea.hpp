#pragma once

#include <functional>
#include <vector>

#include "hardy/graph.hpp"

namespace hardy {

struct FluxInterval {
  double lo, hi;  // g takes `value` on (lo, hi]
  double value;
};

/// The level-crossing flux g(t) = sum_{u(y) < t <= u(x)} b(x,y)(u(x)-u(y)),
/// exact and piecewise constant on a finite truncation. Edges with
/// u(x) = u(y) contribute nothing. Intervals follow the half-open convention
/// (v_i, v_{i+1}] between consecutive distinct u-values.
struct LevelFlux {
  std::vector<double> breakpoints;      // sorted distinct u values (region + boundary)
  std::vector<FluxInterval> intervals;  // breakpoints.size() - 1 entries

  double value_at(double t) const;  // 0 outside (min breakpoint, max breakpoint]
  double min_value() const;
  double max_value() const;
};

/// Exact flux on the truncation; sums run over edges meeting the region.
/// Raises ConstantFunction when u takes a single value on the region.
LevelFlux level_flux(const WeightedGraph& graph, const GraphFunction& u,
                     const std::vector<Vertex>& region);

struct StokesResult {
  double g1, g2;
  double sum_Lu;        // sum over A = {t1 < u <= t2} of Lu
  double residual;      // |g2 - g1 + sum_Lu|
  /// A reached the truncation's boundary layer but every such vertex was
  /// numerically L-harmonic, so the flux identity is unaffected there.
  bool boundary_extended = false;
};

/// Checks g(t2) = g(t1) - sum_A Lu on the truncation. When the level set A
/// meets the boundary layer at a vertex with |Lu| above tolerance the result
/// would be unreliable and LevelSetTouchesBoundary is raised.
StokesResult stokes_residual(const WeightedGraph& graph, const GraphFunction& u, double t1,
                             double t2, const std::vector<Vertex>& region, double tol = 1e-10);

/// Nonnegative Riemann-integrable profile with a closed-form primitive where
/// available; generic profiles fall back to adaptive Simpson quadrature.
class Integrand {
 public:
  static Integrand constant(double c);
  static Integrand inverse_t();              // 1/t on (0, inf)
  static Integrand power(double alpha);      // t^alpha
  static Integrand cutoff_energy(double n);  // t * phi_n'(t)^2 for the log cutoff
  static Integrand generic(std::function<double(double)> f);

  double operator()(double t) const;
  double integral(double a, double b) const;  // signed, a <= b expected

 private:
  std::function<double(double)> eval_;
  std::function<double(double, double)> primitive_;  // integral over [a,b]; may be empty
};

struct CoareaResult {
  double lhs;       // (1/2) sum b(x,y) (u(x)-u(y)) int_{u(y)}^{u(x)} f
  double rhs;       // int f g dt over the flux intervals
  double residual;  // relative
};

/// Both sides of the coarea identity on a finite truncation. f must be
/// nonnegative on the u-range of the region (NegativeF otherwise).
CoareaResult coarea_integral(const WeightedGraph& graph, const GraphFunction& u,
                             const Integrand& f, const std::vector<Vertex>& region);

}  // namespace hardy
