#include "hardy/coarea.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace hardy {

namespace {

// Undirected edges with at least one endpoint in the region, each visited
// once, in deterministic order.
template <typename Fn>
void region_edges(const WeightedGraph& graph, const std::vector<Vertex>& region, Fn&& fn) {
  std::set<Vertex> in_region(region.begin(), region.end());
  std::vector<Vertex> sorted(region.begin(), region.end());
  std::sort(sorted.begin(), sorted.end());
  for (Vertex x : sorted) {
    for (const auto& n : graph.neighbors(x)) {
      if (in_region.count(n.to) && n.to < x) continue;  // handled from the other side
      fn(x, n.to, n.weight);
    }
  }
}

}  // namespace

double LevelFlux::value_at(double t) const {
  if (intervals.empty()) return 0.0;
  if (t <= breakpoints.front() || t > breakpoints.back()) return 0.0;
  // interval index: first breakpoint >= t gives the (lo, hi] slot
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), t);
  std::size_t idx = static_cast<std::size_t>(it - breakpoints.begin());
  if (idx == 0) return 0.0;
  return intervals[idx - 1].value;
}

double LevelFlux::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& iv : intervals) m = std::min(m, iv.value);
  return m;
}

double LevelFlux::max_value() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& iv : intervals) m = std::max(m, iv.value);
  return m;
}

LevelFlux level_flux(const WeightedGraph& graph, const GraphFunction& u,
                     const std::vector<Vertex>& region) {
  if (region.empty()) raise(ErrorCode::InvalidInput, "empty region");
  std::set<double> region_values;
  for (Vertex x : region) region_values.insert(u(x));
  if (region_values.size() < 2)
    raise(ErrorCode::ConstantFunction, "u takes a single value on the region");

  // Breakpoints include boundary-vertex values so crossing edges are exact.
  std::set<double> values(region_values);
  region_edges(graph, region, [&](Vertex x, Vertex y, double) {
    values.insert(u(x));
    values.insert(u(y));
  });

  LevelFlux flux;
  flux.breakpoints.assign(values.begin(), values.end());
  std::map<double, double> delta;  // breakpoint -> flux change entering just above it
  region_edges(graph, region, [&](Vertex x, Vertex y, double w) {
    double ux = u(x), uy = u(y);
    if (ux == uy) return;  // degenerate interval, contributes nothing
    double lo = std::min(ux, uy), hi = std::max(ux, uy);
    double amount = w * (hi - lo);
    delta[lo] += amount;
    delta[hi] -= amount;
  });

  double running = 0.0;
  flux.intervals.reserve(flux.breakpoints.size() - 1);
  for (std::size_t i = 0; i + 1 < flux.breakpoints.size(); ++i) {
    auto it = delta.find(flux.breakpoints[i]);
    if (it != delta.end()) running += it->second;
    flux.intervals.push_back({flux.breakpoints[i], flux.breakpoints[i + 1], running});
  }
  return flux;
}

StokesResult stokes_residual(const WeightedGraph& graph, const GraphFunction& u, double t1,
                             double t2, const std::vector<Vertex>& region, double tol) {
  if (!(t1 <= t2)) raise(ErrorCode::InvalidInput, "need t1 <= t2");
  std::set<Vertex> in_region(region.begin(), region.end());

  StokesResult out;
  auto flux = level_flux(graph, u, region);
  out.g1 = flux.value_at(t1);
  out.g2 = flux.value_at(t2);

  out.sum_Lu = 0.0;
  for (Vertex x : region) {
    double ux = u(x);
    if (!(t1 < ux && ux <= t2)) continue;
    bool on_boundary = false;
    double lu = 0.0;
    double local = 0.0;
    for (const auto& n : graph.neighbors(x)) {
      lu += n.weight * (ux - u(n.to));
      local += n.weight * (std::abs(ux) + std::abs(u(n.to)));
      if (!in_region.count(n.to)) on_boundary = true;
    }
    if (on_boundary) {
      if (std::abs(lu) > tol * (1.0 + local))
        raise(ErrorCode::LevelSetTouchesBoundary,
              "level set {t1 < u <= t2} meets the truncation boundary at vertex " +
                  std::to_string(x) + " with Lu != 0; enlarge the region");
      out.boundary_extended = true;
    }
    out.sum_Lu += lu;
  }
  out.residual = std::abs(out.g2 - out.g1 + out.sum_Lu);
  return out;
}

Integrand Integrand::constant(double c) {
  Integrand f;
  f.eval_ = [c](double) { return c; };
  f.primitive_ = [c](double a, double b) { return c * (b - a); };
  return f;
}

Integrand Integrand::inverse_t() {
  Integrand f;
  f.eval_ = [](double t) { return 1.0 / t; };
  f.primitive_ = [](double a, double b) { return std::log(b / a); };
  return f;
}

Integrand Integrand::power(double alpha) {
  Integrand f;
  f.eval_ = [alpha](double t) { return std::pow(t, alpha); };
  if (alpha == -1.0) return inverse_t();
  f.primitive_ = [alpha](double a, double b) {
    return (std::pow(b, alpha + 1.0) - std::pow(a, alpha + 1.0)) / (alpha + 1.0);
  };
  return f;
}

Integrand Integrand::cutoff_energy(double n) {
  // phi_n has slope +-1/(t log n) on [1/n^2, 1/n] and [n, n^2], so
  // t phi_n'(t)^2 = 1 / (t log^2 n) there and 0 elsewhere.
  Integrand f;
  double logn = std::log(n);
  auto on_ramp = [n](double t) {
    return (t >= 1.0 / (n * n) && t <= 1.0 / n) || (t >= n && t <= n * n);
  };
  f.eval_ = [logn, on_ramp](double t) {
    return on_ramp(t) ? 1.0 / (t * logn * logn) : 0.0;
  };
  f.primitive_ = [n, logn](double a, double b) {
    double total = 0.0;
    auto piece = [&](double lo, double hi) {
      double s = std::max(a, lo), e = std::min(b, hi);
      if (e > s) total += std::log(e / s) / (logn * logn);
    };
    piece(1.0 / (n * n), 1.0 / n);
    piece(n, n * n);
    return total;
  };
  return f;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double Integrand::operator()(double t) const { return eval_(t); }

double Integrand::integral(double a, double b) const {
  if (a == b) return 0.0;
  if (primitive_) return primitive_(a, b);
  double m = 0.5 * (a + b);
  double fa = eval_(a), fm = eval_(m), fb = eval_(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(eval_, a, b, fa, fm, fb, whole, 1e-12 * (1.0 + std::abs(whole)), 48);
}

Integrand Integrand::generic(std::function<double(double)> f) {
  Integrand out;
  out.eval_ = std::move(f);
  return out;
}

CoareaResult coarea_integral(const WeightedGraph& graph, const GraphFunction& u,
                             const Integrand& f, const std::vector<Vertex>& region) {
  auto flux = level_flux(graph, u, region);

  // f must be nonnegative on the u-range; sample each interval
  for (const auto& iv : flux.intervals) {
    for (double t : {iv.lo + 0.25 * (iv.hi - iv.lo), 0.5 * (iv.lo + iv.hi), iv.hi}) {
      if (f(t) < 0.0)
        raise(ErrorCode::NegativeF, "integrand is negative at t = " + std::to_string(t));
    }
  }

  CoareaResult out{0.0, 0.0, 0.0};
  region_edges(graph, region, [&](Vertex x, Vertex y, double w) {
    double ux = u(x), uy = u(y);
    if (ux == uy) return;
    double lo = std::min(ux, uy), hi = std::max(ux, uy);
    out.lhs += w * (hi - lo) * f.integral(lo, hi);
  });
  for (const auto& iv : flux.intervals) out.rhs += iv.value * f.integral(iv.lo, iv.hi);
  out.residual = std::abs(out.lhs - out.rhs) / (1.0 + std::max(std::abs(out.lhs), std::abs(out.rhs)));
  return out;
}

}  // namespace hardy
