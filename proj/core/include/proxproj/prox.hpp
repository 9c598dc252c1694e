#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "proxproj/linalg.hpp"

namespace proxproj {

/// Proximal map of alpha*f: takes (point, alpha) to a point of the same shape.
using ProxOperator = std::function<Vector(const Vector&, double)>;

/// Elementwise soft threshold sgn(x) * max(|x| - alpha, 0), with sgn(0) = 0.
template <class Derived>
typename Derived::PlainObject shrink(const Eigen::MatrixBase<Derived>& x,
                                     double alpha) {
  // Evaluate once; indexing a lazy product would recompute it per entry.
  typename Derived::PlainObject out = x;
  for (Index j = 0; j < out.cols(); ++j) {
    for (Index i = 0; i < out.rows(); ++i) {
      const double v = out(i, j);
      if (v > alpha) {
        out(i, j) = v - alpha;
      } else if (v < -alpha) {
        out(i, j) = v + alpha;
      } else {
        out(i, j) = 0.0;
      }
    }
  }
  return out;
}

/// Singular value threshold U diag(max(sigma - alpha, 0)) V^T.
Matrix svt(const Matrix& x, double alpha);

/// svt that also reports the nuclear norm of the result.
Matrix svt(const Matrix& x, double alpha, double& nuclear_norm);

double nuclear_norm(const Matrix& x);

/// Gradient of the smoothed nuclear norm, U diag(min(sigma/mu, 1)) V^T.
/// Satisfies L - mu * W_mu(L) = svt(L, mu).
Matrix smoothed_nuclear_gradient(const Matrix& l, double mu);

/// Projection onto the ball of the given radius around center.
template <class Derived>
typename Derived::PlainObject ball_project(
    const Eigen::MatrixBase<Derived>& x,
    const Eigen::MatrixBase<Derived>& center, double radius) {
  const typename Derived::PlainObject d = x - center;
  const double n = d.norm();
  if (n <= radius) return x;
  return center + d * (radius / n);
}

/// Set of observed entries, stored sorted (row-major order) and unique.
class ObservationMask {
 public:
  ObservationMask() = default;
  ObservationMask(Index rows, Index cols,
                  std::vector<std::pair<Index, Index>> entries);
  static ObservationMask full(Index rows, Index cols);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool covers_all() const {
    return static_cast<Index>(entries_.size()) == rows_ * cols_;
  }
  const std::vector<std::pair<Index, Index>>& entries() const {
    return entries_;
  }
  bool contains(Index i, Index j) const;

  void check_shape(const Matrix& x) const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<std::pair<Index, Index>> entries_;
};

/// X on the mask, zero elsewhere.
Matrix mask_project(const Matrix& x, const ObservationMask& omega);
/// Zero on the mask, X elsewhere.
Matrix mask_project_perp(const Matrix& x, const ObservationMask& omega);
/// ||P_omega(X)||_F without materializing the projection.
double mask_norm(const Matrix& x, const ObservationMask& omega);

}  // namespace proxproj
