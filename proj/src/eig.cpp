#include "hardy/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

// Sturm-style count of pencil eigenvalues below lambda for a tridiagonal
// A - lambda M via the pivot recurrence d_i = a_i - b_{i-1}^2 / d_{i-1}.
// Zero pivots are displaced to a tiny signed value, as in classic bisection.
std::int64_t tridiag_count_below(const std::function<double(std::int64_t)>& diag,
                                 const std::function<double(std::int64_t)>& offdiag,
                                 const std::function<double(std::int64_t)>& mass,
                                 std::int64_t size, double lambda) {
  std::int64_t count = 0;
  double d_prev = 1.0;
  for (std::int64_t i = 0; i < size; ++i) {
    double a = diag(i) - lambda * mass(i);
    double d;
    if (i == 0) {
      d = a;
    } else {
      double b = offdiag(i - 1);
      d = a - b * b / d_prev;
    }
    if (d == 0.0) d = -std::numeric_limits<double>::min();
    if (d < 0.0) ++count;
    d_prev = d;
  }
  return count;
}

EigResult bisect(const std::function<std::int64_t(double)>& count_below, double hi_seed,
                 const EigOptions& options) {
  // Find a bracket [lo, hi] with count(lo) = 0 <= failure and count(hi) >= 1.
  double hi = hi_seed;
  int guard = 0;
  while (count_below(hi) < 1) {
    hi = hi * 2.0 + 1.0;
    if (++guard > 200) raise(ErrorCode::EigSolverFailure, "no upper bracket found");
  }
  double lo = std::min(0.0, hi);
  guard = 0;
  while (count_below(lo) > 0) {
    lo = lo * 2.0 - 1.0;
    if (++guard > 200)
      raise(ErrorCode::EigSolverFailure, "spectrum unbounded below (no lower bracket)");
  }

  EigResult result;
  for (int it = 0; it < options.max_bisections; ++it) {
    double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;  // bracket at rounding resolution
    if (count_below(mid) == 0)
      lo = mid;
    else
      hi = mid;
    ++result.bisections;
    if (hi - lo <= options.abs_tol + options.rel_tol * std::abs(hi)) break;
  }
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.lambda = 0.5 * (lo + hi);
  result.converged = (hi - lo) <= 16.0 * (options.abs_tol + options.rel_tol * std::abs(hi));
  return result;
}

bool is_tridiagonal(const Eigen::SparseMatrix<double>& A) {
  for (int k = 0; k < A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it)
      if (std::abs(it.row() - it.col()) > 1) return false;
  return true;
}

}  // namespace

EigResult smallest_generalized_eigenvalue_tridiagonal(
    const std::function<double(std::int64_t)>& diag,
    const std::function<double(std::int64_t)>& offdiag,
    const std::function<double(std::int64_t)>& mass, std::int64_t size,
    const EigOptions& options) {
  if (size < 1) raise(ErrorCode::InvalidInput, "empty pencil");
  double hi_seed = 0.0;
  double num = 0.0, den = 0.0;  // Rayleigh quotient of the all-ones vector
  for (std::int64_t i = 0; i < size; ++i) {
    num += diag(i);
    if (i + 1 < size) num += 2.0 * offdiag(i);
    den += mass(i);
  }
  if (den > 0.0 && std::isfinite(num / den)) hi_seed = std::max(1.0, num / den);
  auto counter = [&](double lambda) {
    return tridiag_count_below(diag, offdiag, mass, size, lambda);
  };
  return bisect(counter, hi_seed, options);
}

EigResult smallest_generalized_eigenvalue(const Eigen::SparseMatrix<double>& A,
                                          const Eigen::VectorXd& m, const EigOptions& options) {
  const auto n = A.rows();
  if (n < 1 || A.cols() != n || m.size() != n)
    raise(ErrorCode::InvalidInput, "pencil dimensions do not match");
  double total_mass = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (m[i] < 0.0) raise(ErrorCode::InvalidInput, "negative mass entry");
    total_mass += m[i];
  }
  if (!(total_mass > 0.0)) raise(ErrorCode::ZeroWeightRegion, "weight mass vanishes identically");

  Eigen::SparseMatrix<double> Ac = A;
  Ac.makeCompressed();

  if (is_tridiagonal(Ac)) {
    Eigen::VectorXd diag = Ac.diagonal();
    std::vector<double> offd(static_cast<std::size_t>(std::max<Eigen::Index>(n - 1, 0)), 0.0);
    for (int k = 0; k < Ac.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(Ac, k); it; ++it)
        if (it.row() == it.col() + 1) offd[static_cast<std::size_t>(it.col())] = it.value();
    return smallest_generalized_eigenvalue_tridiagonal(
        [&](std::int64_t i) { return diag[static_cast<Eigen::Index>(i)]; },
        [&](std::int64_t i) { return offd[static_cast<std::size_t>(i)]; },
        [&](std::int64_t i) { return m[static_cast<Eigen::Index>(i)]; }, n, options);
  }

  // Zero-mass block must be positive definite, otherwise the constrained
  // infimum is -infinity (Schur-complement view of the pencil).
  std::vector<Eigen::Index> zero_idx;
  for (Eigen::Index i = 0; i < n; ++i)
    if (m[i] == 0.0) zero_idx.push_back(i);
  if (!zero_idx.empty()) {
    Eigen::VectorXi keep = Eigen::VectorXi::Constant(n, -1);
    for (std::size_t k = 0; k < zero_idx.size(); ++k) keep[zero_idx[k]] = static_cast<int>(k);
    std::vector<Eigen::Triplet<double>> trips;
    for (int k = 0; k < Ac.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(Ac, k); it; ++it)
        if (keep[it.row()] >= 0 && keep[it.col()] >= 0)
          trips.emplace_back(keep[it.row()], keep[it.col()], it.value());
    Eigen::SparseMatrix<double> Azz(static_cast<Eigen::Index>(zero_idx.size()),
                                    static_cast<Eigen::Index>(zero_idx.size()));
    Azz.setFromTriplets(trips.begin(), trips.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(Azz);
    bool pd = ldlt.info() == Eigen::Success;
    if (pd)
      for (Eigen::Index i = 0; i < Azz.rows(); ++i)
        if (!(ldlt.vectorD()[i] > 0.0)) pd = false;
    if (!pd)
      raise(ErrorCode::EigSolverFailure,
            "form is not positive definite on the zero-mass coordinates; the generalized "
            "Rayleigh quotient is unbounded below");
  }

  // Force a structural diagonal so A - lambda*M has one fixed pattern.
  Eigen::SparseMatrix<double> Mdiag(n, n);
  {
    std::vector<Eigen::Triplet<double>> dt;
    dt.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) dt.emplace_back(i, i, m[i]);
    Mdiag.setFromTriplets(dt.begin(), dt.end());
  }
  Eigen::SparseMatrix<double> base = Ac + 0.0 * Mdiag;
  base.makeCompressed();

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.analyzePattern(base);

  // With the zero-mass block positive definite, the negative pivot count of
  // A - lambda*M equals the number of pencil eigenvalues below lambda
  // (Sylvester / Haynsworth).
  auto counter = [&](double lambda) -> std::int64_t {
    double shift = lambda;
    for (int attempt = 0; attempt < 5; ++attempt) {
      Eigen::SparseMatrix<double> shifted = base - shift * Mdiag;
      solver.factorize(shifted);
      if (solver.info() == Eigen::Success) {
        std::int64_t negatives = 0;
        bool clean = true;
        const auto& D = solver.vectorD();
        for (Eigen::Index i = 0; i < n; ++i) {
          double d = D[i];
          if (!std::isfinite(d) || d == 0.0) {
            clean = false;
            break;
          }
          if (d < 0.0) ++negatives;
        }
        if (clean) return negatives;
      }
      // Exact-singular shift hit; nudge lambda and refactor.
      shift += 1e-13 * (1.0 + std::abs(lambda)) * (1 << (2 * attempt));
    }
    raise(ErrorCode::EigSolverFailure, "LDLT inertia count failed repeatedly");
  };

  // Rayleigh quotient of the mass vector seeds the upper bracket.
  Eigen::VectorXd x = m;
  double den = x.dot(m.asDiagonal() * x);
  double num = x.dot(Ac.selfadjointView<Eigen::Lower>() * x);
  double hi_seed = (den > 0.0 && std::isfinite(num / den)) ? std::max(1.0, num / den) : 1.0;
  return bisect(counter, hi_seed, options);
}

}  // namespace hardy
