#pragma once

#include <memory>
#include <optional>

#include "proxproj/linalg.hpp"

namespace proxproj {

inline constexpr double kDefaultTauTol = 1e-12;

/// Which factorization `project` uses to apply (AA^T + eps*tau*I)^{-1}.
enum class ProjectionPath { svd, spd };

/// The set C = {x : ||Ax - b|| <= eps} with cached factorizations of A.
///
/// Construction validates the constraint: eps must be nonnegative and finite,
/// A must have full row rank when eps == 0, and b must lie in the image of A.
/// Violations throw IllPosedError.
class ConstraintSpec {
 public:
  ConstraintSpec(Matrix a, Vector b, double eps,
                 ProjectionPath path = ProjectionPath::svd);

  const Matrix& a() const { return a_; }
  const Vector& b() const { return b_; }
  double eps() const { return eps_; }
  ProjectionPath path() const { return path_; }
  const Svd& svd() const { return *svd_; }
  /// Cholesky factor of AA^T; present only when eps == 0.
  const SpdFactor* gram() const { return gram_.get(); }

  Index rows() const { return a_.rows(); }
  Index cols() const { return a_.cols(); }

  Vector residual(const Vector& x) const;
  double violation(const Vector& x) const { return residual(x).norm(); }

 private:
  Matrix a_;
  Vector b_;
  double eps_;
  ProjectionPath path_;
  std::shared_ptr<const Svd> svd_;
  std::shared_ptr<const SpdFactor> gram_;
};

/// Bracket and root for tau in g(tau) = tau * ||(AA^T + eps*tau*I)^{-1} r|| = 1.
struct TauBracket {
  double lo = 0.0;
  double hi = 0.0;
  double root = 0.0;
  int iterations = 0;
};

/// g(tau) evaluated in SVD coordinates with c = U^T r. Components whose
/// singular value is below the cutoff are dropped.
double tau_function(const Svd& s, const Vector& c, double eps, double tau);

/// Solves g(tau) = 1 by safeguarded Newton-bisection on g^2 - 1.
/// Requires ||r|| > eps. Throws IllConditionedError when the bracket
/// evaluates to non-finite values and ConvergenceError when `max_iter` is
/// exhausted before |g - 1| <= tol.
TauBracket solve_tau(const Svd& s, const Vector& r, double eps,
                     double tol = kDefaultTauTol, int max_iter = 200);

/// Same root solve on explicit spectral weights: g(tau)^2 =
/// sum_i (tau c_i / (s2_i + eps tau))^2, bracketed by (0, s2max/(rnorm-eps)].
/// Entries with s2_i + eps*tau == 0 are skipped.
TauBracket solve_tau_spectral(const Vector& s2, const Vector& c, double s2max,
                              double rnorm, double eps,
                              double tol = kDefaultTauTol, int max_iter = 200);

struct ProjectionResult {
  Vector u;
  bool moved = false;
  double tau = 0.0;
};

/// Euclidean projection onto C. Feasible points come back bitwise unchanged.
ProjectionResult project_detailed(const ConstraintSpec& spec, const Vector& x,
                                  double tol = kDefaultTauTol);

Vector project(const ConstraintSpec& spec, const Vector& x,
               double tol = kDefaultTauTol);

/// Affine projection x - A^T (AA^T)^{-1}(Ax - b) using the cached Cholesky
/// factor. Throws ConfigError when eps != 0 (no factor cached).
Vector project_eps_zero(const ConstraintSpec& spec, const Vector& x);

}  // namespace proxproj
