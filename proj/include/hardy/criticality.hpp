#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hardy/eig.hpp"
#include "hardy/hardy_weight.hpp"
#include "hardy/schrodinger.hpp"

namespace hardy {

/// The log cutoff of the criticality null sequence:
/// 2 + log t / log n on [1/n^2, 1/n], 1 on [1/n, n], 2 - log t / log n on
/// [n, n^2], 0 elsewhere.
double cutoff_profile(double t, double n);

struct NullSequenceElement {
  double n = 0.0;
  GraphFunction e_n;             // finitely supported, 0 <= e_n <= 1
  std::vector<Vertex> support;   // subset of {1/n^2 <= u0 <= n^2}
  double energy = 0.0;           // (h-w)_v(e_n) = (1/2) sum b v v (grad e_n)^2
};

/// e_n = phi_n o u0 with the energy taken in the v-twisted gradient form
/// (v is the ground-state candidate; for the constructed weight it is
/// (uv)^(1/2), which makes the twisted form the full h-w energy).
/// The level set {1/n^2 <= u0 <= n^2} must stay strictly inside the
/// truncation ball or InfiniteSupport is raised, and for procedural graphs
/// the family must declare proper quotients.
NullSequenceElement null_sequence(const GraphFunction& u0, double n, const WeightedGraph& graph,
                                  const GraphFunction& v, int truncation_radius);

struct EnergyDecay {
  std::vector<double> n_values;
  std::vector<double> energies;
  bool strictly_decreasing = false;
  double slope_vs_inv_log = 0.0;   // least-squares slope of energy against 1/log n
  double fit_C = 0.0;              // through-origin fit energy ~ C / log n
  std::vector<double> residuals;   // C/log n - energy
};

EnergyDecay energy_decay_certificate(const GraphFunction& u0, const WeightedGraph& graph,
                                     const GraphFunction& v, const std::vector<double>& n_list,
                                     int truncation_radius);

enum class GrowthVerdict { DivergentLog, DivergentPower, BoundedLooking };

struct DivergenceReport {
  std::vector<int> radii;
  std::vector<double> partial_sums;
  bool increasing = false;
  double log_fit_slope = 0.0, log_fit_intercept = 0.0;  // S ~ a log N + b
  double power_fit_exponent = 0.0;                      // S ~ c N^p (log-log fit)
  GrowthVerdict verdict = GrowthVerdict::BoundedLooking;
};

/// Partial sums sum_{B_N} w psi^2 with a fitted growth model. Divergence is a
/// trend, never a boolean claim.
DivergenceReport null_criticality_divergence(const SchrodingerOperator& H,
                                             const GraphFunction& psi, const GraphFunction& w,
                                             const std::vector<int>& radii);

enum class RegionFamily { Balls, Annuli };

/// Classification thresholds; calibration parameters, not hard claims.
struct ClassificationThresholds {
  double critical_lo = 1.0 - 1e-6;
  double critical_hi = 1.25;
};

struct SweepConfig {
  RegionFamily family = RegionFamily::Balls;
  std::vector<int> radii;
  int annulus_inner = 10;
  double weight_scale = 1.0;  // sweep against weight_scale * w
  ClassificationThresholds thresholds;
  EigOptions eig;
};

enum class Classification { SubcriticalLooking, CriticalLooking, Supercritical };

const char* to_string(Classification c);
const char* to_string(GrowthVerdict v);

struct SpectralReport {
  RegionFamily family = RegionFamily::Balls;
  double weight_scale = 1.0;
  std::vector<int> radii;
  std::vector<double> lambda_star;  // nonincreasing in the radius
  Classification classification = Classification::CriticalLooking;
};

/// Per region, the bottom generalized Rayleigh value
///   lambda*(region) = inf h(phi) / sum (scale*w) phi^2
/// over phi supported strictly inside the region, via the smallest
/// generalized eigenvalue of the Dirichlet form pair. Vertices with w = 0
/// stay in the trial space but carry no denominator mass.
SpectralReport rayleigh_sweep(const SchrodingerOperator& H, const GraphFunction& w,
                              const SweepConfig& config);

struct OptimalityConfig {
  std::vector<int> ball_radii{100, 1000, 10000};
  std::vector<double> null_n{4, 16, 256};
  std::vector<int> divergence_radii{1000, 10000, 100000};
  std::vector<int> annulus_radii{100, 1000, 10000};
  int annulus_inner = 10;
  double near_infinity_scale = 1.2;
  ClassificationThresholds thresholds;
  EigOptions eig;
};

struct OptimalityReport {
  SpectralReport criticality;
  EnergyDecay decay;
  DivergenceReport divergence;
  DivergenceReport h_partial;  // partial sums of h(ground state) on balls
  SpectralReport near_infinity;
  std::optional<int> near_infinity_witness;  // smallest swept N with lambda* < 1
  std::string caveat;
};

/// Consolidated three-diagnostic verdict for a constructed weight. These are
/// finite-truncation diagnostics, not proofs; the caveat says so.
OptimalityReport optimality_report(const HardyWeight& w, const OptimalityConfig& config = {});

}  // namespace hardy
