#pragma once

#include "proxproj/drs.hpp"

namespace proxproj {

/// Stable matrix completion:
/// min ||X||_* subject to ||P_omega(X - M)||_F <= eps.
struct SmcProblem {
  /// Observations; entries outside omega are ignored.
  Matrix m_observed;
  ObservationMask omega;
  double eps = 0.0;
  /// Normalizer for the update residual. Defaults to ||P_omega(M)||_F; the
  /// experiments set it to ||M||_F of the planted matrix.
  double scale = 0.0;

  /// Fills `scale` when unset and checks the problem. Throws IllPosedError
  /// when eps = 0 and omega is not the full index set.
  void validate();
  double residual_scale() const;
};

/// Projection onto {X : ||P_omega(X - M)||_F <= eps}, in closed form.
Matrix smc_project(const Matrix& z, const SmcProblem& p);

/// max(||P_omega(X - M)||_F - eps, 0) / eps, or the unscaled gap if eps = 0.
double smc_violation(const SmcProblem& p, const Matrix& x);
/// ||X||_*.
double smc_objective(const Matrix& x);

struct SmcResult {
  IterateLog log;
  Matrix x;
};

/// PP-SMC from Z = X = P_omega(M); reflected svt, then projection. Stops on
/// ||X^{k+1} - X^k||_F / scale <= residual_tol.
SmcResult run_smc(SmcProblem p, const SolverConfig& cfg);

/// Degrees of freedom of an n x n rank-r matrix, r(2n - r).
double smc_degrees_of_freedom(Index n, Index r);

}  // namespace proxproj
