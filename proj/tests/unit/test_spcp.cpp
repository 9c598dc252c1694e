#include <doctest.h>

#include <cmath>

#include "proxproj/errors.hpp"
#include "proxproj/generators.hpp"
#include "proxproj/projection.hpp"
#include "proxproj/spcp.hpp"
#include "support/oracles.hpp"

using namespace proxproj;

namespace {

// Generic projection onto {(l, s) : ||[I I][vec l; vec s] - vec M|| <= eps}.
SpcpPair generic_spcp_project(const Matrix& zl, const Matrix& zs,
                              const Matrix& m, double eps) {
  const Index d = m.size();
  Matrix a(d, 2 * d);
  a << Matrix::Identity(d, d), Matrix::Identity(d, d);
  Vector z(2 * d);
  z << oracle::vec(zl), oracle::vec(zs);
  const ConstraintSpec spec(a, oracle::vec(m), eps);
  const Vector u = project(spec, z);
  return {oracle::unvec(u.head(d), m.rows(), m.cols()),
          oracle::unvec(u.tail(d), m.rows(), m.cols())};
}

}  // namespace

TEST_CASE("feasible blocks come back unchanged") {
  const Matrix m = oracle::random_matrix(1, 3, 4);
  const Matrix zl = m + 0.01 * oracle::random_matrix(2, 3, 4);
  const Matrix zs = Matrix::Zero(3, 4);
  const SpcpPair out = spcp_project(zl, zs, m, 1.0);
  CHECK(out.l == zl);
  CHECK(out.s == zs);
}

TEST_CASE("eps = 0 with M = 0 and equal blocks projects to zero") {
  const Matrix w = oracle::random_matrix(3, 2, 2);
  const SpcpPair out = spcp_project(w, w, Matrix::Zero(2, 2), 0.0);
  CHECK(out.l.norm() == 0.0);
  CHECK(out.s.norm() == 0.0);
}

TEST_CASE("closed form matches the generic projection with A = [I I]") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Matrix m = oracle::random_matrix(seed, 3, 3);
    const Matrix zl = 2.0 * oracle::random_matrix(seed + 100, 3, 3);
    const Matrix zs = 2.0 * oracle::random_matrix(seed + 200, 3, 3);
    const SpcpPair fast = spcp_project(zl, zs, m, 0.2);
    const SpcpPair ref = generic_spcp_project(zl, zs, m, 0.2);
    CHECK((fast.l - ref.l).norm() <= 1e-10);
    CHECK((fast.s - ref.s).norm() <= 1e-10);
    CHECK((fast.l + fast.s - m).norm() <= 0.2 + 1e-12 * 1.2);
  }
}

TEST_CASE("shape mismatch is reported") {
  CHECK_THROWS_AS(spcp_project(Matrix::Zero(2, 2), Matrix::Zero(2, 3),
                               Matrix::Zero(2, 2), 0.1),
                  ShapeError);
}

TEST_CASE("problem validation and default lambda") {
  CHECK(SpcpProblem::default_lambda(25) == doctest::Approx(0.2));
  SpcpProblem p;
  p.m = Matrix::Ones(2, 2);
  p.lambda = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.lambda = 1.0;
  p.eps = -1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("violation metric") {
  SpcpProblem p;
  p.m = Matrix::Zero(2, 2);
  p.lambda = 1.0;
  p.eps = 0.5;
  Matrix l = Matrix::Zero(2, 2);
  l(0, 0) = 1.0;
  CHECK(spcp_violation(p, l, Matrix::Zero(2, 2)) == doctest::Approx(1.0));
  l(0, 0) = 0.25;
  CHECK(spcp_violation(p, l, Matrix::Zero(2, 2)) == 0.0);
  p.eps = 0.0;
  CHECK(spcp_violation(p, l, Matrix::Zero(2, 2)) == doctest::Approx(0.25));
}

TEST_CASE("M = 0 with eps = 0 stays at zero") {
  SpcpProblem p;
  p.m = Matrix::Zero(4, 3);
  p.lambda = 0.5;
  SolverConfig cfg;
  cfg.max_iters = 5;
  const SpcpResult r = run_spcp(p, cfg);
  CHECK(r.l.norm() == 0.0);
  CHECK(r.s.norm() == 0.0);
  CHECK(r.log.converged);
}

TEST_CASE("rank-1 data with a large lambda puts everything in L") {
  const Vector u = oracle::random_vector(5, 6);
  const Vector v = oracle::random_vector(6, 5);
  SpcpProblem p;
  p.m = 3.0 * u * v.transpose();
  p.lambda = 10.0;
  SolverConfig cfg;
  cfg.max_iters = 2000;
  cfg.residual_tol = 1e-12;
  const SpcpResult r = run_spcp(p, cfg);
  CHECK(r.s.lpNorm<Eigen::Infinity>() <= 1e-10);
  CHECK((r.l + r.s - p.m).norm() <= 1e-10);
  CHECK(nuclear_norm(r.l) <= nuclear_norm(p.m) + 1e-9);
}

TEST_CASE("every logged iterate is feasible") {
  const SpcpInstance inst = gen_spcp(20, 15, 2, 0.05, 1e-2, 3);
  SolverConfig cfg;
  cfg.max_iters = 300;
  cfg.residual_tol = 0.0;
  const SpcpResult r = run_spcp(inst.problem, cfg);
  CHECK(r.log.iterations == 300);
  CHECK(r.log.max_violation <= 1e-12);
}

TEST_CASE("the solver separates a planted low-rank and sparse pair") {
  const SpcpInstance inst = gen_spcp(40, 30, 2, 0.05, 0.0, 11);
  SolverConfig cfg;
  cfg.max_iters = 3000;
  cfg.residual_tol = 1e-9;
  const SpcpResult r = run_spcp(inst.problem, cfg);
  CHECK(r.log.converged);
  CHECK((r.l - inst.low_rank).norm() <= 1e-3 * inst.low_rank.norm());
  CHECK((r.s - inst.sparse).norm() <= 1e-3 * inst.sparse.norm());
}
