#pragma once

#include <memory>

#include "proxproj/drs.hpp"

namespace proxproj {

/// Divergence on an n x n grid with Neumann boundaries eliminated.
///
/// A flux field is the stacked 2(n-1) x n matrix [m1; m2^T] and
/// div(m) = K m1 + m2 K^T, where K is the n x (n-1) backward difference
/// scaled by 1/h.
class EmdOperator {
 public:
  explicit EmdOperator(Index n, double h = 1.0);

  Index n() const { return n_; }
  double h() const { return h_; }
  const Matrix& k() const { return k_; }
  /// Full n x n left singular vectors of K.
  const Matrix& u() const { return u_; }
  /// Squared singular values of K padded with a trailing zero (length n).
  const Vector& sigma_sq() const { return sigma_sq_; }
  /// ||A^T A|| = 2 sigma_max(K)^2.
  double norm_sq() const { return 2.0 * sigma_sq_(0); }

  Matrix divergence(const Matrix& m) const;
  /// A^T q = [K^T q; K^T q^T].
  Matrix adjoint(const Matrix& q) const;

  /// Projection of z onto {m : ||div(m) + rhs||_F <= eps}. Reports tau when
  /// `tau` is non-null (0 when z is feasible or the tiny-eps path is used).
  Matrix project(const Matrix& z, const Matrix& rhs, double eps,
                 double tol = kDefaultTauTol, double* tau = nullptr) const;

  void check_flux(const Matrix& m) const;

 private:
  Index n_;
  double h_;
  Matrix k_;
  Matrix u_;
  Vector sigma_sq_;
};

/// Earth mover's distance between two densities on an n x n grid.
struct EmdProblem {
  Matrix rho0;
  Matrix rho1;
  double h = 1.0;
  double eps = 1e-10;
  std::shared_ptr<const EmdOperator> op;

  /// Validates shapes and signs. With `normalize`, each density is scaled
  /// to unit mass; otherwise masses must already agree to 1e-12 relative.
  /// Throws IllPosedError on negative entries, zero mass, mismatched masses
  /// or eps <= 0.
  static EmdProblem create(Matrix rho0, Matrix rho1, double eps = 1e-10,
                           double h = 1.0, bool normalize = true);

  /// rho1 - rho0, the constant term of the constraint.
  Matrix rhs() const { return rho1 - rho0; }
  Index n() const { return rho0.rows(); }
};

/// ||div(m) + rho1 - rho0||_F.
double emd_violation(const EmdProblem& p, const Matrix& m);
/// ||m||_1.
double emd_objective(const Matrix& m);

struct EmdResult {
  IterateLog log;
  Matrix m;
  /// h * ||m||_1 at the final iterate.
  double distance = 0.0;
};

/// PP-EMD from z = 0 with the l1 prox. The logged residual is
/// ||m^{k+1} - m^k||_F. The stop rule applies the same test as run_pp to m
/// and z, with the z test relaxed by 10*eps to ignore an O(eps) drift.
EmdResult run_emd(const EmdProblem& p, const SolverConfig& cfg);

/// Densified divergence (n^2 x 2(n-1)n) acting on column-major vec(m).
Matrix emd_dense_operator(const EmdOperator& op);

}  // namespace proxproj
