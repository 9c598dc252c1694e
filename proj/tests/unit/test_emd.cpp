#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "proxproj/emd.hpp"
#include "proxproj/errors.hpp"
#include "proxproj/projection.hpp"
#include "support/oracles.hpp"

using namespace proxproj;

namespace {

Matrix point_mass(Index n, Index r, Index c) {
  Matrix rho = Matrix::Zero(n, n);
  rho(r, c) = 1.0;
  return rho;
}

EmdResult solve_points(Index n, Index r0, Index c0, Index r1, Index c1) {
  const EmdProblem p =
      EmdProblem::create(point_mass(n, r0, c0), point_mass(n, r1, c1));
  SolverConfig cfg;
  cfg.alpha = 0.01;
  cfg.max_iters = 20000;
  cfg.residual_tol = 1e-10;
  return run_emd(p, cfg);
}

}  // namespace

TEST_CASE("zero flux has zero divergence") {
  const EmdOperator op(5);
  CHECK(op.divergence(Matrix::Zero(8, 5)).norm() == 0.0);
}

TEST_CASE("2x2 grid by hand") {
  // One vertical edge per column and one horizontal edge per row.
  const EmdOperator op(2);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;  // flow between (0,0) and (1,0)
  Matrix want = Matrix::Zero(2, 2);
  want(0, 0) = 1.0;
  want(1, 0) = -1.0;
  CHECK(op.divergence(m) == want);

  m.setZero();
  m(1, 1) = 2.0;  // flow between (1,0) and (1,1)
  want.setZero();
  want(1, 0) = 2.0;
  want(1, 1) = -2.0;
  CHECK(op.divergence(m) == want);
}

TEST_CASE("divergence matches the cell stencil") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Index n = 2 + static_cast<Index>(seed % 6);
    const double h = seed % 2 == 0 ? 1.0 : 0.5;
    const EmdOperator op(n, h);
    const Matrix m = oracle::random_matrix(seed, 2 * (n - 1), n);
    CHECK((op.divergence(m) - oracle::emd_divergence_stencil(m, h)).norm() <=
          1e-13);
  }
}

TEST_CASE("densified operator matches the stencil operator") {
  const EmdOperator op(4);
  CHECK((emd_dense_operator(op) - oracle::emd_stencil_operator(4, 1.0)).norm() ==
        0.0);
}

TEST_CASE("adjoint identity") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Index n = 3 + static_cast<Index>(seed % 5);
    const EmdOperator op(n);
    const Matrix m = oracle::random_matrix(seed, 2 * (n - 1), n);
    const Matrix q = oracle::random_matrix(seed + 50, n, n);
    const double lhs = (op.divergence(m).array() * q.array()).sum();
    const double rhs = (m.array() * op.adjoint(q).array()).sum();
    CHECK(std::abs(lhs - rhs) <= 1e-10);
  }
}

TEST_CASE("operator norm is twice the largest squared singular value of K") {
  const EmdOperator op(6);
  const Matrix a = emd_dense_operator(op);
  CHECK(op.norm_sq() == doctest::Approx(spectral_norm_sq(a)).epsilon(1e-12));
}

TEST_CASE("shape checks") {
  const EmdOperator op(3);
  CHECK_THROWS_AS(op.divergence(Matrix::Zero(3, 3)), ShapeError);
  CHECK_THROWS_AS(op.adjoint(Matrix::Zero(4, 3)), ShapeError);
  CHECK_THROWS_AS(EmdOperator(1), ShapeError);
}

TEST_CASE("feasible flux is returned unchanged") {
  const EmdOperator op(4);
  const Matrix z = oracle::random_matrix(3, 6, 4);
  const Matrix rhs = -op.divergence(z);
  CHECK(op.project(z, rhs, 1e-3) == z);
}

TEST_CASE("projection equals the generic projection on the densified operator") {
  const Index n = 4;
  const EmdOperator op(n);
  const Matrix a = emd_dense_operator(op);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Matrix rho0 = oracle::random_matrix(seed, n, n).cwiseAbs();
    Matrix rho1 = oracle::random_matrix(seed + 30, n, n).cwiseAbs();
    rho0 /= rho0.sum();
    rho1 /= rho1.sum();
    const Matrix rhs = rho1 - rho0;
    const double eps = seed % 2 == 0 ? 0.05 : 1e-3;
    const Matrix z = oracle::random_matrix(seed + 60, 2 * (n - 1), n);
    const ConstraintSpec spec(a, -oracle::vec(rhs), eps);
    const Vector ref = project(spec, oracle::vec(z));
    const Matrix u = op.project(z, rhs, eps);
    CHECK((oracle::vec(u) - ref).norm() <= 1e-8);
    CHECK((op.divergence(u) + rhs).norm() <=
          eps + feasibility_slack(eps, kDefaultTauTol));
  }
}

TEST_CASE("problem creation normalizes and validates") {
  Matrix rho0 = Matrix::Zero(3, 3);
  rho0(0, 0) = 4.0;
  const EmdProblem p = EmdProblem::create(rho0, 2.0 * point_mass(3, 2, 2));
  CHECK(p.rho0.sum() == doctest::Approx(1.0));
  CHECK(p.rho1.sum() == doctest::Approx(1.0));
  CHECK_THROWS_AS(EmdProblem::create(rho0, point_mass(3, 1, 1), 1e-10, 1.0,
                                     false),
                  IllPosedError);
  CHECK_THROWS_AS(EmdProblem::create(Matrix::Zero(3, 3), rho0), IllPosedError);
  CHECK_THROWS_AS(EmdProblem::create(-rho0, rho0), IllPosedError);
  CHECK_THROWS_AS(EmdProblem::create(rho0, rho0, 0.0), IllPosedError);
}

TEST_CASE("equal densities have zero distance") {
  const Matrix rho = oracle::random_matrix(4, 5, 5).cwiseAbs();
  const EmdProblem p = EmdProblem::create(rho, rho);
  SolverConfig cfg;
  cfg.max_iters = 50;
  const EmdResult r = run_emd(p, cfg);
  CHECK(r.distance == 0.0);
  CHECK(r.log.max_violation <= p.eps);
}

TEST_CASE("point masses on one row are k cells apart") {
  for (Index k : {1, 3, 6}) {
    const EmdResult r = solve_points(8, 2, 1, 2, 1 + k);
    CAPTURE(k);
    CHECK(r.log.converged);
    CHECK(std::abs(r.distance - static_cast<double>(k)) <= 0.02 * k);
  }
}

TEST_CASE("distance between pixels is their Manhattan distance") {
  const EmdResult r = solve_points(8, 1, 1, 5, 6);
  CHECK(std::abs(r.distance - 9.0) <= 0.02 * 9.0);
  CHECK(r.log.max_violation <= 1e-10 + 1e-12);
}

TEST_CASE("distance is symmetric") {
  const double ab = solve_points(8, 0, 2, 6, 4).distance;
  const double ba = solve_points(8, 6, 4, 0, 2).distance;
  CHECK(std::abs(ab - ba) <= 0.01 * ab);
}
