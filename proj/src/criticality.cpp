#include "hardy/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

namespace hardy {

double cutoff_profile(double t, double n) {
  if (!(n > 1.0)) raise(ErrorCode::InvalidInput, "cutoff parameter must exceed 1");
  if (t <= 0.0) return 0.0;
  double logn = std::log(n);
  double inv_n = 1.0 / n, inv_n2 = inv_n * inv_n, n2 = n * n;
  if (t < inv_n2 || t > n2) return 0.0;
  if (t <= inv_n) return 2.0 + std::log(t) / logn;
  if (t < n) return 1.0;
  return 2.0 - std::log(t) / logn;
}

NullSequenceElement null_sequence(const GraphFunction& u0, double n, const WeightedGraph& graph,
                                  const GraphFunction& v, int truncation_radius) {
  if (graph.kind() == GraphKind::ProceduralOracle && !graph.metadata().proper_quotients)
    raise(ErrorCode::InvalidInput,
          "null sequences need properness of u0; the family does not declare it");

  auto region = ball(graph, graph.root(), truncation_radius);
  std::set<Vertex> in_region(region.begin(), region.end());
  double lo = 1.0 / (n * n), hi = n * n;

  std::unordered_map<Vertex, double> values;
  std::vector<Vertex> support;
  for (Vertex x : region) {
    double t = u0(x);
    if (!(t > 0.0))
      raise(ErrorCode::NonpositiveFunction, "u0 must be strictly positive");
    if (t < lo || t > hi) continue;
    // boundary-layer vertices in the level set mean the set may continue
    // outside the truncation
    for (const auto& nb : graph.neighbors(x)) {
      if (!in_region.count(nb.to))
        raise(ErrorCode::InfiniteSupport,
              "level set {1/n^2 <= u0 <= n^2} reaches the truncation boundary; support "
              "cannot be certified finite at this radius");
    }
    double e = cutoff_profile(t, n);
    if (e != 0.0) {
      values[x] = e;
      support.push_back(x);
    }
  }
  std::sort(support.begin(), support.end());

  NullSequenceElement element;
  element.n = n;
  element.support = support;
  element.e_n = GraphFunction::from_map(std::move(values));
  element.energy = gst_form(graph, v, element.e_n, element.e_n);
  return element;
}

EnergyDecay energy_decay_certificate(const GraphFunction& u0, const WeightedGraph& graph,
                                     const GraphFunction& v, const std::vector<double>& n_list,
                                     int truncation_radius) {
  EnergyDecay out;
  for (double n : n_list) {
    auto element = null_sequence(u0, n, graph, v, truncation_radius);
    out.n_values.push_back(n);
    out.energies.push_back(element.energy);
  }
  out.strictly_decreasing = true;
  for (std::size_t i = 1; i < out.energies.size(); ++i)
    if (!(out.energies[i] < out.energies[i - 1])) out.strictly_decreasing = false;

  // least-squares of energy against 1/log n (affine) and through the origin
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = out.energies.size();
  for (std::size_t i = 0; i < m; ++i) {
    double x = 1.0 / std::log(out.n_values[i]);
    double y = out.energies[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = m * sxx - sx * sx;
  out.slope_vs_inv_log = denom != 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
  out.fit_C = sxx != 0.0 ? sxy / sxx : 0.0;
  for (std::size_t i = 0; i < m; ++i)
    out.residuals.push_back(out.fit_C / std::log(out.n_values[i]) - out.energies[i]);
  return out;
}

namespace {

void fit_growth(DivergenceReport& report) {
  std::size_t m = report.radii.size();
  report.increasing = true;
  for (std::size_t i = 1; i < m; ++i)
    if (report.partial_sums[i] < report.partial_sums[i - 1] - 1e-14) report.increasing = false;

  auto linear_fit = [](const std::vector<double>& xs, const std::vector<double>& ys,
                       double& slope, double& intercept) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t k = xs.size();
    for (std::size_t i = 0; i < k; ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    double denom = k * sxx - sx * sx;
    slope = denom != 0.0 ? (k * sxy - sx * sy) / denom : 0.0;
    intercept = (sy - slope * sx) / k;
  };

  std::vector<double> logs, vals, loglogs;
  bool all_positive = true;
  for (std::size_t i = 0; i < m; ++i) {
    logs.push_back(std::log(static_cast<double>(report.radii[i])));
    vals.push_back(report.partial_sums[i]);
    if (report.partial_sums[i] <= 0.0) all_positive = false;
  }
  double b = 0.0;
  linear_fit(logs, vals, report.log_fit_slope, b);
  report.log_fit_intercept = b;
  if (all_positive) {
    for (double v : vals) loglogs.push_back(std::log(v));
    double c = 0.0;
    linear_fit(logs, loglogs, report.power_fit_exponent, c);
  }

  // Trend heuristic on the increments between successive (log-spaced) radii.
  if (m >= 3) {
    double d1 = report.partial_sums[m - 2] - report.partial_sums[m - 3];
    double d2 = report.partial_sums[m - 1] - report.partial_sums[m - 2];
    double scale = std::abs(report.partial_sums[m - 1]) + 1e-300;
    if (d2 <= 0.05 * scale && d2 <= 0.5 * std::max(d1, 1e-300))
      report.verdict = GrowthVerdict::BoundedLooking;
    else if (report.power_fit_exponent > 0.2)
      report.verdict = GrowthVerdict::DivergentPower;
    else
      report.verdict = GrowthVerdict::DivergentLog;
  } else {
    report.verdict = report.increasing ? GrowthVerdict::DivergentLog
                                       : GrowthVerdict::BoundedLooking;
  }
}

}  // namespace

DivergenceReport null_criticality_divergence(const SchrodingerOperator& H,
                                             const GraphFunction& psi, const GraphFunction& w,
                                             const std::vector<int>& radii) {
  DivergenceReport report;
  Exhaustion exhaustion(H.graph());
  for (int radius : radii) {
    auto region = exhaustion.ball(radius);
    double sum = 0.0;
    for (Vertex x : region) {
      double p = psi(x);
      sum += w(x) * p * p;
    }
    report.radii.push_back(radius);
    report.partial_sums.push_back(sum);
  }
  fit_growth(report);
  return report;
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::SubcriticalLooking: return "subcritical-looking";
    case Classification::CriticalLooking: return "critical-looking";
    case Classification::Supercritical: return "supercritical";
  }
  return "?";
}

const char* to_string(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::DivergentLog: return "divergent-log";
    case GrowthVerdict::DivergentPower: return "divergent-power";
    case GrowthVerdict::BoundedLooking: return "bounded-looking";
  }
  return "?";
}

SpectralReport rayleigh_sweep(const SchrodingerOperator& H, const GraphFunction& w,
                              const SweepConfig& config) {
  if (config.radii.empty()) raise(ErrorCode::InvalidInput, "no radii given");
  const auto& graph = H.graph();
  Exhaustion exhaustion(graph);

  SpectralReport report;
  report.family = config.family;
  report.weight_scale = config.weight_scale;

  for (int radius : config.radii) {
    auto region = exhaustion.ball(radius);
    if (config.family == RegionFamily::Annuli) {
      auto inner = exhaustion.ball(config.annulus_inner);
      std::set<Vertex> drop(inner.begin(), inner.end());
      std::vector<Vertex> annulus;
      for (Vertex v : region)
        if (!drop.count(v)) annulus.push_back(v);
      region = std::move(annulus);
    }
    std::set<Vertex> in_region(region.begin(), region.end());

    // Trial space: vertices strictly inside the region (Dirichlet realization
    // of C_c(region)); edges to the frozen-zero exterior feed the diagonal.
    std::vector<Vertex> interior;
    for (Vertex x : region) {
      bool inside = true;
      for (const auto& nb : graph.neighbors(x))
        if (!in_region.count(nb.to)) {
          inside = false;
          break;
        }
      if (inside) interior.push_back(x);
    }
    if (interior.empty())
      raise(ErrorCode::InvalidInput,
            "region at radius " + std::to_string(radius) + " has empty interior");

    std::unordered_map<Vertex, int> index;
    for (std::size_t i = 0; i < interior.size(); ++i) index[interior[i]] = static_cast<int>(i);
    const int n = static_cast<int>(interior.size());
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd mass(n);
    bool any_mass = false;
    for (int i = 0; i < n; ++i) {
      Vertex x = interior[static_cast<std::size_t>(i)];
      double diag = graph.potential(x);
      for (const auto& nb : graph.neighbors(x)) {
        diag += nb.weight;
        auto it = index.find(nb.to);
        if (it != index.end()) trips.emplace_back(i, it->second, -nb.weight);
      }
      trips.emplace_back(i, i, diag);
      double wx = config.weight_scale * w(x);
      if (wx < 0.0 && wx > -1e-14) wx = 0.0;  // clamp roundoff
      mass[i] = wx;
      if (wx > 0.0) any_mass = true;
    }
    if (!any_mass)
      raise(ErrorCode::ZeroWeightRegion,
            "weight vanishes identically on the region at radius " + std::to_string(radius));

    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trips.begin(), trips.end());
    auto eig = smallest_generalized_eigenvalue(A, mass, config.eig);
    if (!eig.converged)
      raise(ErrorCode::EigSolverFailure,
            "bisection did not converge at radius " + std::to_string(radius));
    report.radii.push_back(radius);
    report.lambda_star.push_back(eig.lambda);
  }

  // classification from the final sweep value and the trend
  const ClassificationThresholds& thresholds = config.thresholds;
  double last = report.lambda_star.back();
  bool decreasing = true;
  for (std::size_t i = 1; i < report.lambda_star.size(); ++i)
    if (report.lambda_star[i] > report.lambda_star[i - 1] + 1e-9) decreasing = false;
  if (last < thresholds.critical_lo)
    report.classification = Classification::Supercritical;
  else if (last <= thresholds.critical_hi && decreasing)
    report.classification = Classification::CriticalLooking;
  else
    report.classification = Classification::SubcriticalLooking;
  return report;
}

OptimalityReport optimality_report(const HardyWeight& w, const OptimalityConfig& config) {
  const auto& H = w.op();
  OptimalityReport report;
  GraphFunction wf = w.as_function();
  GraphFunction psi = w.ground_state();

  SweepConfig balls;
  balls.family = RegionFamily::Balls;
  balls.radii = config.ball_radii;
  balls.thresholds = config.thresholds;
  balls.eig = config.eig;
  report.criticality = rayleigh_sweep(H, wf, balls);

  GraphFunction u0 = GraphFunction::from_fn(
      [u = w.u(), v = w.v()](Vertex x) { return u(x) / v(x); });
  double max_n = 2.0;
  for (double n : config.null_n) max_n = std::max(max_n, n);
  int truncation = 8;
  // the level set {u0 <= n^2} on built-in families sits inside a ball of
  // comparable radius; grow until null_sequence accepts
  for (;;) {
    try {
      report.decay =
          energy_decay_certificate(u0, H.graph(), psi, config.null_n, truncation);
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InfiniteSupport || truncation > (1 << 28)) throw;
      truncation = truncation < static_cast<int>(max_n * max_n) + 2
                       ? static_cast<int>(max_n * max_n) + 2
                       : truncation * 2;
    }
  }

  report.divergence = null_criticality_divergence(H, psi, wf, config.divergence_radii);

  // h(psi) partial sums over balls
  {
    DivergenceReport hp;
    Exhaustion exhaustion(H.graph());
    for (int radius : config.divergence_radii) {
      auto region = exhaustion.ball(radius);
      hp.radii.push_back(radius);
      hp.partial_sums.push_back(H.quadratic_form_partial(psi, region).total);
    }
    fit_growth(hp);
    report.h_partial = hp;
  }

  SweepConfig annuli;
  annuli.family = RegionFamily::Annuli;
  annuli.radii = config.annulus_radii;
  annuli.annulus_inner = config.annulus_inner;
  annuli.weight_scale = config.near_infinity_scale;
  annuli.thresholds = config.thresholds;
  annuli.eig = config.eig;
  report.near_infinity = rayleigh_sweep(H, wf, annuli);
  for (std::size_t i = 0; i < report.near_infinity.radii.size(); ++i) {
    if (report.near_infinity.lambda_star[i] < 1.0) {
      report.near_infinity_witness = report.near_infinity.radii[i];
      break;
    }
  }

  report.caveat =
      "finite-truncation diagnostics: trends over graph exhaustions, not proofs of "
      "criticality, null-criticality, or optimality near infinity";
  return report;
}

}  // namespace hardy
