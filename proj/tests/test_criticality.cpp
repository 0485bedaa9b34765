#include <doctest.h>

#include <cmath>

#include "hardy/criticality.hpp"
#include "hardy/families.hpp"
#include "helpers.hpp"

using namespace hardy;

namespace {

GraphFunction identity_fn() {
  return GraphFunction::from_fn([](Vertex x) { return static_cast<double>(x); });
}

GraphFunction sqrt_fn() {
  return GraphFunction::from_fn([](Vertex x) { return std::sqrt(static_cast<double>(x)); });
}

}  // namespace

TEST_CASE("cutoff profile values") {
  CHECK(cutoff_profile(1.0 / 16.0, 4.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(cutoff_profile(0.25, 4.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cutoff_profile(1.0, 4.0) == 1.0);
  CHECK(cutoff_profile(4.0, 4.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cutoff_profile(8.0, 4.0) == doctest::Approx(0.5).epsilon(1e-14));  // 2 - log8/log4
  CHECK(cutoff_profile(16.0, 4.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(cutoff_profile(17.0, 4.0) == 0.0);
  CHECK(cutoff_profile(0.0, 4.0) == 0.0);
}

TEST_CASE("null-sequence elements on the half-line") {
  auto H = halfline_hardy_operator();
  auto element = null_sequence(identity_fn(), 4.0, H.graph(), sqrt_fn(), 64);
  CHECK(element.n == 4.0);
  // e_n = 1 on [1/n, n], ramps to 0 at n^2
  for (Vertex x = 1; x <= 4; ++x) CHECK(element.e_n(x) == 1.0);
  CHECK(element.e_n(8) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(element.e_n(16) == 0.0);
  CHECK(element.e_n(17) == 0.0);
  for (Vertex x : element.support) {
    CHECK(element.e_n(x) >= 0.0);
    CHECK(element.e_n(x) <= 1.0);
    CHECK(identity_fn()(x) <= 16.0);
    CHECK(identity_fn()(x) >= 1.0 / 16.0);
  }
  // pointwise convergence to 1 at a fixed vertex
  double previous = -1.0;
  for (double n : {4.0, 16.0, 256.0}) {
    auto e = null_sequence(identity_fn(), n, H.graph(), sqrt_fn(), 1 << 17);
    double value = e.e_n(20);
    CHECK(value >= previous);
    previous = value;
  }
  CHECK(previous == 1.0);
}

TEST_CASE("null-sequence support must be certified finite") {
  auto H = halfline_hardy_operator();
  // truncation too small: the level set reaches the rim
  CHECK_THROWS_AS(null_sequence(identity_fn(), 16.0, H.graph(), sqrt_fn(), 100), Error);
  // bounded u0 fills every ball: degenerate support is reported the same way
  auto bounded = GraphFunction::from_fn(
      [](Vertex x) { return 1.0 + 1.0 / static_cast<double>(x + 1); });
  CHECK_THROWS_AS(null_sequence(bounded, 4.0, H.graph(), sqrt_fn(), 50), Error);
}

TEST_CASE("frozen null-sequence energies from the calibration run") {
  auto H = halfline_hardy_operator();
  auto decay = energy_decay_certificate(identity_fn(), H.graph(), sqrt_fn(), {4.0, 16.0, 256.0},
                                        (1 << 16) + 8);
  REQUIRE(decay.energies.size() == 3);
  CHECK(decay.energies[0] == doctest::Approx(0.720718052).epsilon(1e-6));
  CHECK(decay.energies[1] == doctest::Approx(0.360663221).epsilon(1e-6));
  CHECK(decay.energies[2] == doctest::Approx(0.180336870).epsilon(1e-6));
  CHECK(decay.strictly_decreasing);
  CHECK(decay.slope_vs_inv_log > 0.0);
  CHECK(decay.fit_C == doctest::Approx(1.0).epsilon(2e-3));
  // quarter-step ratio stays at about 1/2 per n -> n^2
  CHECK(decay.energies[1] / decay.energies[0] <= 0.52);
  CHECK(decay.energies[2] / decay.energies[1] <= 0.52);
}

TEST_CASE("ground state of the constructed weight is (H - w)-harmonic") {
  auto w = halfline_optimal_weight();
  const auto& H = w.op();
  auto psi = w.ground_state();
  for (Vertex x = 1; x <= 100; ++x) {
    double residual = H.apply(psi, x) - w(x) * psi(x);
    double scale = 1.0 + std::abs(H.apply(psi, x)) + std::abs(w(x) * psi(x));
    CHECK(std::abs(residual) <= 1e-10 * scale);
  }
}

TEST_CASE("divergence table for the optimal half-line weight") {
  auto w = halfline_optimal_weight();
  auto report = null_criticality_divergence(w.op(), sqrt_fn(), w.as_function(),
                                            {1000, 10000, 100000});
  REQUIRE(report.partial_sums.size() == 3);
  // frozen from the calibration run (ball of radius N covers {1..N+1})
  CHECK(report.partial_sums[0] == doctest::Approx(2.224968677).epsilon(1e-7));
  CHECK(report.partial_sums[1] == doctest::Approx(2.800277757).epsilon(1e-7));
  CHECK(report.partial_sums[2] == doctest::Approx(3.375890283).epsilon(1e-7));
  CHECK(report.increasing);
  CHECK(report.log_fit_slope == doctest::Approx(0.25).epsilon(2e-3));
  CHECK(report.verdict == GrowthVerdict::DivergentLog);
}

TEST_CASE("a summable weight is flagged as bounded-looking (positive-critical)") {
  auto H = halfline_hardy_operator();
  auto cubic = GraphFunction::from_fn([](Vertex x) {
    double n = static_cast<double>(x);
    return 1.0 / (n * n * n);
  });
  auto report = null_criticality_divergence(H, sqrt_fn(), cubic, {1000, 10000, 100000});
  CHECK(report.increasing);
  CHECK(report.verdict == GrowthVerdict::BoundedLooking);
  CHECK(report.partial_sums[2] - report.partial_sums[1] < 2e-4);
}

TEST_CASE("rayleigh sweep on half-line balls: frozen values and monotonicity") {
  auto w = halfline_optimal_weight();
  SweepConfig config;
  config.radii = {100, 300};
  auto report = rayleigh_sweep(w.op(), w.as_function(), config);
  REQUIRE(report.lambda_star.size() == 2);
  // calibration oracle: lambda*(B_100) = 1.235282489999
  CHECK(report.lambda_star[0] == doctest::Approx(1.235282489999).epsilon(1e-7));
  CHECK(report.lambda_star[1] <= report.lambda_star[0]);
  CHECK(report.lambda_star[1] >= 1.0 - 1e-9);
  CHECK(report.classification == Classification::CriticalLooking);
}

TEST_CASE("rayleigh sweep scaling: c w rescales lambda* by 1/c") {
  auto w = halfline_optimal_weight();
  SweepConfig config;
  config.radii = {200};
  auto base = rayleigh_sweep(w.op(), w.as_function(), config);
  config.weight_scale = 2.0;
  auto doubled = rayleigh_sweep(w.op(), w.as_function(), config);
  CHECK(doubled.lambda_star[0] == doctest::Approx(0.5 * base.lambda_star[0]).epsilon(1e-9));
}

TEST_CASE("control weights flip the classification") {
  auto w = halfline_optimal_weight();
  SweepConfig config;
  config.radii = {100, 1000};

  config.weight_scale = 0.5;  // w/2: lambda* plateaus near 2
  auto halved = rayleigh_sweep(w.op(), w.as_function(), config);
  CHECK(halved.lambda_star.back() == doctest::Approx(2.253416921).epsilon(1e-7));
  CHECK(halved.classification == Classification::SubcriticalLooking);

  config.weight_scale = 2.0;  // 2w: the inequality already fails on small balls
  config.radii = {100};
  auto doubled = rayleigh_sweep(w.op(), w.as_function(), config);
  CHECK(doubled.lambda_star[0] == doctest::Approx(0.617641245).epsilon(1e-7));
  CHECK(doubled.classification == Classification::Supercritical);
}

TEST_CASE("sweep rejects zero weights on the region") {
  auto H = halfline_hardy_operator();
  SweepConfig config;
  config.radii = {50};
  CHECK_THROWS_AS(rayleigh_sweep(H, GraphFunction::zero(), config), Error);
}

TEST_CASE("annulus sweep matches the ball assembly conventions") {
  auto w = halfline_optimal_weight();
  SweepConfig config;
  config.family = RegionFamily::Annuli;
  config.annulus_inner = 10;
  config.radii = {100};
  config.weight_scale = 1.2;
  auto report = rayleigh_sweep(w.op(), w.as_function(), config);
  // oracle value for the interior {13..100} pencil with mass 1.2 w
  CHECK(report.lambda_star[0] == doctest::Approx(8.078665392).epsilon(1e-6));
}

TEST_CASE("optimality report on the half-line (small radii smoke run)") {
  auto w = halfline_optimal_weight();
  OptimalityConfig config;
  config.ball_radii = {100, 300};
  config.null_n = {4, 16};
  config.divergence_radii = {100, 1000, 10000};
  config.annulus_radii = {100, 1000};
  auto report = optimality_report(w, config);
  CHECK(report.criticality.classification == Classification::CriticalLooking);
  CHECK(report.decay.strictly_decreasing);
  CHECK(report.divergence.verdict == GrowthVerdict::DivergentLog);
  CHECK(report.h_partial.increasing);
  CHECK_FALSE(report.near_infinity_witness.has_value());  // far out of reach at these radii
  CHECK_FALSE(report.caveat.empty());
}
