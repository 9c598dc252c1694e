#include "proxproj/prox.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace proxproj {

Matrix svt(const Matrix& x, double alpha, double& nuclear) {
  if (alpha < 0.0) throw ConfigError("svt: negative threshold");
  const Svd s = svd(x);
  Index k = 0;
  nuclear = 0.0;
  while (k < s.sigma.size() && s.sigma(k) > alpha) {
    nuclear += s.sigma(k) - alpha;
    ++k;
  }
  if (k == 0) return Matrix::Zero(x.rows(), x.cols());
  const Vector d = s.sigma.head(k).array() - alpha;
  return s.u.leftCols(k) * d.asDiagonal() * s.v.leftCols(k).transpose();
}

Matrix svt(const Matrix& x, double alpha) {
  double unused = 0.0;
  return svt(x, alpha, unused);
}

double nuclear_norm(const Matrix& x) { return singular_values(x).sum(); }

Matrix smoothed_nuclear_gradient(const Matrix& l, double mu) {
  if (!(mu > 0.0)) throw ConfigError("smoothed_nuclear_gradient: mu <= 0");
  const Svd s = svd(l);
  const Vector d = (s.sigma / mu).cwiseMin(1.0);
  return s.u * d.asDiagonal() * s.v.transpose();
}

ObservationMask::ObservationMask(Index rows, Index cols,
                                 std::vector<std::pair<Index, Index>> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ < 0 || cols_ < 0) throw ShapeError("ObservationMask: bad shape");
  for (const auto& [i, j] : entries_) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
      throw ShapeError("ObservationMask: index (" + std::to_string(i) + ", " +
                       std::to_string(j) + ") outside " +
                       std::to_string(rows_) + "x" + std::to_string(cols_));
    }
  }
  std::sort(entries_.begin(), entries_.end());
  entries_.erase(std::unique(entries_.begin(), entries_.end()),
                 entries_.end());
}

ObservationMask ObservationMask::full(Index rows, Index cols) {
  std::vector<std::pair<Index, Index>> e;
  e.reserve(static_cast<std::size_t>(rows * cols));
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) e.emplace_back(i, j);
  }
  return ObservationMask(rows, cols, std::move(e));
}

bool ObservationMask::contains(Index i, Index j) const {
  return std::binary_search(entries_.begin(), entries_.end(),
                            std::make_pair(i, j));
}

void ObservationMask::check_shape(const Matrix& x) const {
  if (x.rows() != rows_ || x.cols() != cols_) {
    throw ShapeError("ObservationMask: mask is " + std::to_string(rows_) +
                     "x" + std::to_string(cols_) + ", matrix is " +
                     std::to_string(x.rows()) + "x" +
                     std::to_string(x.cols()));
  }
}

Matrix mask_project(const Matrix& x, const ObservationMask& omega) {
  omega.check_shape(x);
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (const auto& [i, j] : omega.entries()) out(i, j) = x(i, j);
  return out;
}

Matrix mask_project_perp(const Matrix& x, const ObservationMask& omega) {
  omega.check_shape(x);
  Matrix out = x;
  for (const auto& [i, j] : omega.entries()) out(i, j) = 0.0;
  return out;
}

double mask_norm(const Matrix& x, const ObservationMask& omega) {
  omega.check_shape(x);
  double acc = 0.0;
  for (const auto& [i, j] : omega.entries()) acc += x(i, j) * x(i, j);
  return std::sqrt(acc);
}

}  // namespace proxproj
