#pragma once

#include "proxproj/drs.hpp"

namespace proxproj {

/// Stable principal component pursuit:
/// min ||L||_* + lambda ||S||_1 subject to ||L + S - M||_F <= eps.
struct SpcpProblem {
  Matrix m;
  double lambda = 0.0;
  double eps = 0.0;

  /// lambda = 1/sqrt(rows of M).
  static double default_lambda(Index rows);
  /// Throws ConfigError on lambda <= 0 or eps < 0.
  void validate() const;
};

struct SpcpPair {
  Matrix l;
  Matrix s;
};

/// Projection of (zl, zs) onto {(L, S) : ||L + S - M||_F <= eps}.
SpcpPair spcp_project(const Matrix& zl, const Matrix& zs, const Matrix& m,
                      double eps);

/// max(||L + S - M||_F - eps, 0) / eps, or ||L + S - M||_F when eps = 0.
double spcp_violation(const SpcpProblem& p, const Matrix& l, const Matrix& s);
double spcp_objective(const SpcpProblem& p, const Matrix& l, const Matrix& s);
/// ||M||_F, or 1 for M = 0. Normalizes the update residual.
double spcp_scale(const SpcpProblem& p);

/// Iterates of the PP-SPCP loop. Starts at Z = X = (M, 0).
struct SpcpState {
  Matrix zl;
  Matrix zs;
  Matrix xl;
  Matrix xs;

  static SpcpState initial(const SpcpProblem& p);
};

/// Reflected prox on each block (svt with alpha, shrink with alpha*lambda)
/// followed by the projection.
void spcp_step(SpcpState& st, const SpcpProblem& p, double alpha);

struct SpcpResult {
  IterateLog log;
  Matrix l;
  Matrix s;
};

/// Stops when ||X^{k+1} - X^k||_F / ||M||_F <= residual_tol and the same
/// holds for Z.
SpcpResult run_spcp(const SpcpProblem& p, const SolverConfig& cfg);

}  // namespace proxproj
