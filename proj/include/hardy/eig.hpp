#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace hardy {

struct EigOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_bisections = 200;
};

struct EigResult {
  double lambda = 0.0;
  int bisections = 0;
  bool converged = false;
  double bracket_lo = 0.0, bracket_hi = 0.0;
};

/// Smallest finite generalized eigenvalue of the symmetric pencil (A, diag(m)),
/// m >= 0 with at least one positive entry:
///   lambda* = inf { x^T A x / x^T M x : x^T M x > 0 }.
/// Computed by bisection on the inertia of A - lambda M (sparse LDL^T, or a
/// Sturm recurrence when A is tridiagonal in the given ordering). Zero-mass
/// coordinates stay in the trial space but carry no denominator; A restricted
/// to them must be positive definite or the infimum is unbounded below
/// (EigSolverFailure).
EigResult smallest_generalized_eigenvalue(const Eigen::SparseMatrix<double>& A,
                                          const Eigen::VectorXd& m, const EigOptions& options = {});

/// Streaming variant for symmetric tridiagonal pencils given by coefficient
/// callbacks (0-based index): diag(i), offdiag(i) = A(i,i+1), mass(i) > 0.
/// O(1) memory; handles very large path regions.
EigResult smallest_generalized_eigenvalue_tridiagonal(
    const std::function<double(std::int64_t)>& diag,
    const std::function<double(std::int64_t)>& offdiag,
    const std::function<double(std::int64_t)>& mass, std::int64_t size,
    const EigOptions& options = {});

}  // namespace hardy
