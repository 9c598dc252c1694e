#include "proxproj/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

namespace proxproj {

namespace {

std::string dims(const Matrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

Index Svd::numerical_rank() const {
  const double cut = kSingularCutoff * sigma_max();
  Index rank = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cut) ++rank;
  }
  return rank;
}

Matrix Svd::reconstruct() const {
  const Index k = sigma.size();
  return u.leftCols(k) * sigma.asDiagonal() * v.leftCols(k).transpose();
}

Svd svd(const Matrix& a, SvdMode mode) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw ShapeError("svd: empty matrix " + dims(a));
  }
  if (!all_finite(a)) {
    throw FactorizationError("svd: non-finite entries in " + dims(a) +
                             " matrix");
  }
  const unsigned flags =
      (mode == SvdMode::full_u ? Eigen::ComputeFullU : Eigen::ComputeThinU) |
      Eigen::ComputeThinV;
  Eigen::BDCSVD<Matrix> dec(a, flags);
  if (dec.info() != Eigen::Success) {
    throw FactorizationError("svd: no convergence for " + dims(a) +
                             " matrix");
  }
  return Svd{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

Vector singular_values(const Matrix& a) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw ShapeError("singular_values: empty matrix " + dims(a));
  }
  Eigen::BDCSVD<Matrix> dec(a);
  if (dec.info() != Eigen::Success) {
    throw FactorizationError("singular_values: no convergence for " +
                             dims(a) + " matrix");
  }
  return dec.singularValues();
}

SpdFactor::SpdFactor(const Matrix& g) {
  if (g.rows() != g.cols()) {
    throw ShapeError("SpdFactor: matrix is " + dims(g) + ", not square");
  }
  llt_.compute(g);
  if (llt_.info() != Eigen::Success) {
    throw NotSpdError("SpdFactor: non-positive pivot in " + dims(g) +
                      " Cholesky factorization");
  }
}

Vector SpdFactor::solve(const Vector& r) const {
  if (r.size() != size()) {
    throw ShapeError("SpdFactor::solve: rhs length " +
                     std::to_string(r.size()) + " vs order " +
                     std::to_string(size()));
  }
  return llt_.solve(r);
}

Matrix SpdFactor::solve(const Matrix& r) const {
  if (r.rows() != size()) {
    throw ShapeError("SpdFactor::solve: rhs rows " + std::to_string(r.rows()) +
                     " vs order " + std::to_string(size()));
  }
  return llt_.solve(r);
}

Vector spd_solve(const Matrix& g, const Vector& r) {
  return SpdFactor(g).solve(r);
}

TridiagonalMatrix::TridiagonalMatrix(Vector sub_diag, Vector main_diag,
                                     Vector super_diag)
    : sub(std::move(sub_diag)),
      diag(std::move(main_diag)),
      super(std::move(super_diag)) {
  const Index n = diag.size();
  const Index off = n > 0 ? n - 1 : 0;
  if (n < 1 || sub.size() != off || super.size() != off) {
    throw ShapeError("TridiagonalMatrix: diagonals have lengths " +
                     std::to_string(sub.size()) + "/" + std::to_string(n) +
                     "/" + std::to_string(super.size()));
  }
}

Matrix TridiagonalMatrix::dense() const {
  const Index n = size();
  Matrix t = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    t(i, i) = diag(i);
    if (i + 1 < n) {
      t(i + 1, i) = sub(i);
      t(i, i + 1) = super(i);
    }
  }
  return t;
}

Vector TridiagonalMatrix::multiply(const Vector& y) const {
  const Index n = size();
  if (y.size() != n) throw ShapeError("TridiagonalMatrix::multiply: length");
  Vector out(n);
  for (Index i = 0; i < n; ++i) {
    double acc = diag(i) * y(i);
    if (i > 0) acc += sub(i - 1) * y(i - 1);
    if (i + 1 < n) acc += super(i) * y(i + 1);
    out(i) = acc;
  }
  return out;
}

Vector thomas_solve(const TridiagonalMatrix& t, const Vector& r) {
  const Index n = t.size();
  if (r.size() != n) {
    throw ShapeError("thomas_solve: rhs length " + std::to_string(r.size()) +
                     " vs order " + std::to_string(n));
  }
  // Forward sweep stores the modified super-diagonal in c and rhs in d.
  Vector c(n);
  Vector d(n);
  double pivot = t.diag(0);
  if (pivot == 0.0) throw SingularError("thomas_solve: zero pivot at row 0");
  c(0) = n > 1 ? t.super(0) / pivot : 0.0;
  d(0) = r(0) / pivot;
  for (Index i = 1; i < n; ++i) {
    pivot = t.diag(i) - t.sub(i - 1) * c(i - 1);
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw SingularError("thomas_solve: zero pivot at row " +
                          std::to_string(i));
    }
    c(i) = i + 1 < n ? t.super(i) / pivot : 0.0;
    d(i) = (r(i) - t.sub(i - 1) * d(i - 1)) / pivot;
  }
  Vector y(n);
  y(n - 1) = d(n - 1);
  for (Index i = n - 2; i >= 0; --i) y(i) = d(i) - c(i) * y(i + 1);
  return y;
}

double spectral_norm_sq(const Matrix& a) {
  const double s = singular_values(a)(0);
  return s * s;
}

bool all_finite(const Matrix& a) { return a.allFinite(); }

}  // namespace proxproj
