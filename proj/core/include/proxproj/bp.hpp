#pragma once

#include "proxproj/drs.hpp"

namespace proxproj {

/// Basis pursuit: min ||x||_1 subject to Ax = b.
struct BpProblem {
  Matrix a;
  Vector b;
};

struct BpResult {
  IterateLog log;
  Vector x;
};

/// ||Ax - b||.
double bp_violation(const BpProblem& p, const Vector& x);
double bp_objective(const Vector& x);

/// Equality-constrained PP with the l1 prox and a cached Cholesky factor of
/// AA^T. Starts from z = 0 unless `z0` is given. Throws IllPosedError when A
/// lacks full row rank.
BpResult run_bp(const BpProblem& p, const SolverConfig& cfg,
                const Vector* z0 = nullptr);

}  // namespace proxproj
