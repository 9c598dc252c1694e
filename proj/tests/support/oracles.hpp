#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. None of these call into the solver paths they are checking.

#include <cstdint>
#include <functional>
#include <vector>

#include "proxproj/linalg.hpp"
#include "proxproj/prox.hpp"

namespace oracle {

using proxproj::Index;
using proxproj::Matrix;
using proxproj::Vector;

/// g(tau) = tau ||(AA^T + eps tau I)^{-1} r|| via a dense LU solve.
double g_dense(const Matrix& a, const Vector& r, double eps, double tau);

/// Plain bisection for g(tau) = 1 on (0, sigma_1^2 / (||r|| - eps)].
/// sigma_1 comes from a symmetric eigen solve of AA^T.
double bisection_tau(const Matrix& a, const Vector& r, double eps,
                     int iterations = 400);

/// Projection onto ||Ax - b|| <= eps from the KKT form
/// u = x - A^T (AA^T + eps tau I)^{-1} r with the bisection tau. For eps = 0
/// uses the dense normal equations.
Vector bisection_project(const Matrix& a, const Vector& b, double eps,
                         const Vector& x);

struct LpSolution {
  bool feasible = false;
  double objective = 0.0;
  Vector x;
};

/// min ||x||_1 s.t. Ax = b by enumerating every basic feasible solution of
/// the split LP in (u, v) >= 0, x = u - v. Exponential; for tiny A only.
LpSolution l1_basis_enumeration(const Matrix& a, const Vector& b);

/// Same LP by a dense two-phase simplex with Bland's rule.
LpSolution l1_simplex(const Matrix& a, const Vector& b);

/// Minimizer of f over [lo, hi] on a uniform grid with the given step.
double grid_minimize(const std::function<double(double)>& f, double lo,
                     double hi, double step);

/// Pattern search on a convex function, shrinking the step from `step` to
/// `final_step`.
Vector pattern_minimize(const std::function<double(const Vector&)>& f,
                        Vector x0, double step, double final_step);

/// Divergence of a stacked flux [m1; m2^T] written cell by cell.
Matrix emd_divergence_stencil(const Matrix& m, double h);

/// Densified divergence on column-major vec(flux), from the stencil.
Matrix emd_stencil_operator(Index n, double h);

/// Selection operator rows e_{(i,j)}^T for each observed entry, acting on
/// column-major vec(X).
Matrix mask_selection_operator(const proxproj::ObservationMask& omega);

/// Column-major vectorization and its inverse.
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Index rows, Index cols);

/// Random matrix with entries uniform on [-1, 1] from std::mt19937_64.
Matrix random_matrix(std::uint64_t seed, Index rows, Index cols);
Vector random_vector(std::uint64_t seed, Index n);

}  // namespace oracle
