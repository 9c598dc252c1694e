#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "proxproj/errors.hpp"

namespace proxproj {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Singular values at or below this fraction of sigma_max are treated as
/// zero whenever they would be used as divisors.
inline constexpr double kSingularCutoff = 1e-12;

/// Thin (or full-U) singular value decomposition A = U diag(sigma) V^T with
/// sigma sorted in descending order.
struct Svd {
  Matrix u;
  Vector sigma;
  Matrix v;

  double sigma_max() const { return sigma.size() > 0 ? sigma(0) : 0.0; }
  /// Number of singular values above kSingularCutoff * sigma_max.
  Index numerical_rank() const;
  Matrix reconstruct() const;
};

enum class SvdMode { thin, full_u };

Svd svd(const Matrix& a, SvdMode mode = SvdMode::thin);

/// Singular values only (descending).
Vector singular_values(const Matrix& a);

/// Cholesky factor of a symmetric positive definite matrix, factor once and
/// solve many times.
class SpdFactor {
 public:
  explicit SpdFactor(const Matrix& g);

  Vector solve(const Vector& r) const;
  Matrix solve(const Matrix& r) const;
  Index size() const { return llt_.rows(); }

 private:
  Eigen::LLT<Matrix> llt_;
};

Vector spd_solve(const Matrix& g, const Vector& r);

/// Square tridiagonal matrix stored by its three diagonals.
struct TridiagonalMatrix {
  Vector sub;    // n-1, entries (i+1, i)
  Vector diag;   // n
  Vector super;  // n-1, entries (i, i+1)

  TridiagonalMatrix() = default;
  TridiagonalMatrix(Vector sub_diag, Vector main_diag, Vector super_diag);

  Index size() const { return diag.size(); }
  Matrix dense() const;
  Vector multiply(const Vector& y) const;
};

/// O(n) elimination for tridiagonal systems. Throws SingularError on a zero
/// pivot.
Vector thomas_solve(const TridiagonalMatrix& t, const Vector& r);

/// Spectral norm squared, i.e. ||A A^T|| = ||A^T A||.
double spectral_norm_sq(const Matrix& a);

bool all_finite(const Matrix& a);

}  // namespace proxproj
