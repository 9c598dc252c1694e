#include <doctest.h>

#include <cmath>

#include "proxproj/baselines.hpp"
#include "proxproj/errors.hpp"
#include "proxproj/generators.hpp"
#include "support/oracles.hpp"

using namespace proxproj;

namespace {

BpProblem tiny_bp() {
  BpProblem p;
  p.a.resize(2, 3);
  p.a << 1.0, 0.0, 1.0, 0.0, 1.0, 1.0;
  p.b.resize(2);
  p.b << 1.0, 1.0;
  return p;
}

EmdProblem point_pair() {
  Matrix r0 = Matrix::Zero(8, 8);
  Matrix r1 = Matrix::Zero(8, 8);
  r0(1, 2) = 1.0;
  r1(5, 4) = 1.0;
  return EmdProblem::create(r0, r1);
}

}  // namespace

TEST_CASE("method names round trip") {
  for (BaselineMethod m :
       {BaselineMethod::lb, BaselineMethod::lmm, BaselineMethod::pdhg,
        BaselineMethod::vasalm, BaselineMethod::pspg, BaselineMethod::pg,
        BaselineMethod::gprox, BaselineMethod::spg}) {
    CHECK(parse_baseline(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_baseline("admm"), ConfigError);
}

TEST_CASE("config validation") {
  BaselineConfig c;
  CHECK_NOTHROW(c.validate());
  c.alpha = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = BaselineConfig{};
  c.max_iters = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("strict step conditions") {
  std::vector<std::string> warnings;
  CHECK_NOTHROW(detail::check_strict_upper("x", 0.5, 1.0, warnings));
  CHECK(warnings.empty());
  CHECK_NOTHROW(detail::check_strict_upper("x", 1.0, 1.0, warnings));
  CHECK(warnings.size() == 1);
  CHECK_THROWS_AS(detail::check_strict_upper("x", 1.001, 1.0, warnings),
                  ConfigError);
}

TEST_CASE("BP baselines stay at the origin for A = I, b = 0") {
  BpProblem p;
  p.a = Matrix::Identity(4, 4);
  p.b = Vector::Zero(4);
  for (BaselineMethod m :
       {BaselineMethod::lb, BaselineMethod::lmm, BaselineMethod::pdhg}) {
    BaselineConfig cfg;
    cfg.method = m;
    cfg.max_iters = 20;
    const BpBaselineResult r = run_bp_baseline(p, cfg);
    CHECK(r.x.norm() == 0.0);
    CHECK(r.log.last().objective == 0.0);
  }
}

TEST_CASE("BP baselines reach the LP minimum on a tiny instance") {
  const BpProblem p = tiny_bp();
  const oracle::LpSolution lp = oracle::l1_basis_enumeration(p.a, p.b);
  for (BaselineMethod m :
       {BaselineMethod::lb, BaselineMethod::lmm, BaselineMethod::pdhg}) {
    BaselineConfig cfg;
    cfg.method = m;
    cfg.max_iters = 50000;
    cfg.residual_tol = 1e-14;
    const BpBaselineResult r = run_bp_baseline(p, cfg);
    CAPTURE(to_string(m));
    CHECK(std::abs(r.log.last().objective - lp.objective) <= 1e-4);
  }
}

TEST_CASE("BP default steps sit on the boundary and warn") {
  const BpProblem p = tiny_bp();
  BaselineConfig cfg;
  cfg.max_iters = 2;
  cfg.method = BaselineMethod::lmm;
  CHECK(run_bp_baseline(p, cfg).warnings.size() == 1);
  cfg.method = BaselineMethod::pdhg;
  CHECK(run_bp_baseline(p, cfg).warnings.size() == 1);
  // The LB default alpha = 2/||AA^T|| is the end of its open interval too.
  cfg.method = BaselineMethod::lb;
  CHECK(run_bp_baseline(p, cfg).warnings.size() == 1);
  cfg.alpha = 0.5;
  CHECK(run_bp_baseline(p, cfg).warnings.empty());
  cfg.alpha = 10.0;
  CHECK_THROWS_AS(run_bp_baseline(p, cfg), ConfigError);
  cfg.method = BaselineMethod::spg;
  CHECK_THROWS_AS(run_bp_baseline(p, cfg), ConfigError);
}

TEST_CASE("SPCP baselines stay at zero for M = 0") {
  SpcpProblem p;
  p.m = Matrix::Zero(5, 4);
  p.lambda = 0.5;
  p.eps = 0.1;
  for (BaselineMethod m :
       {BaselineMethod::vasalm, BaselineMethod::pspg, BaselineMethod::pg}) {
    BaselineConfig cfg;
    cfg.method = m;
    cfg.max_iters = 10;
    if (m == BaselineMethod::pspg) cfg.reference_objective = 1.0;
    const SpcpBaselineResult r = run_spcp_baseline(p, cfg);
    CAPTURE(to_string(m));
    CHECK(r.l.norm() == 0.0);
    CHECK(r.s.norm() == 0.0);
  }
}

TEST_CASE("SPCP preconditions") {
  const SpcpInstance inst = gen_spcp(6, 5, 1, 0.1, 0.0, 1);
  BaselineConfig cfg;
  cfg.method = BaselineMethod::pspg;
  CHECK_THROWS_AS(run_spcp_baseline(inst.problem, cfg), ConfigError);
  cfg.method = BaselineMethod::vasalm;
  cfg.eta = 2.0;
  CHECK_THROWS_AS(run_spcp_baseline(inst.problem, cfg), ConfigError);
  cfg = BaselineConfig{};
  cfg.method = BaselineMethod::pg;
  cfg.alpha = 3.0;
  CHECK_THROWS_AS(run_spcp_baseline(inst.problem, cfg), ConfigError);
}

TEST_CASE("VASALM on SPCP matches PP but stays infeasible") {
  const SpcpInstance inst = gen_spcp(60, 40, 3, 0.05, 1e-2, 1);
  SolverConfig pc;
  pc.max_iters = 5000;
  pc.residual_tol = 1e-10;
  const SpcpResult pp = run_spcp(inst.problem, pc);
  BaselineConfig cfg;
  cfg.method = BaselineMethod::vasalm;
  cfg.alpha = 1.0;
  cfg.max_iters = 5000;
  cfg.residual_tol = 1e-10;
  const SpcpBaselineResult va = run_spcp_baseline(inst.problem, cfg);
  const double a = pp.log.last().objective;
  const double b = va.log.last().objective;
  CHECK(std::abs(a - b) <= 5e-4 * std::abs(a));
  CHECK(pp.log.max_violation <= 1e-12);
  CHECK(va.log.last().violation > 1e-12);
}

TEST_CASE("PSPG stays feasible up to its root solve") {
  const SpcpInstance inst = gen_spcp(20, 15, 2, 0.05, 1e-2, 2);
  BaselineConfig cfg;
  cfg.method = BaselineMethod::pspg;
  cfg.max_iters = 200;
  const SpcpBaselineResult r = run_spcp_baseline(inst.problem, cfg);
  CHECK(r.log.max_violation <= 1e-8);
}

TEST_CASE("pspg_theta solves its scalar equation") {
  const Matrix d = 3.0 * oracle::random_matrix(4, 6, 5);
  const double lambda = 0.4;
  const double mu = 0.2;
  const double eps = 0.5;
  const double theta = pspg_theta(d, lambda, mu, eps, 1.0, 1e-12);
  const Matrix g =
      (d.cwiseAbs().array() / (1.0 + mu * theta)).min(lambda / theta).matrix();
  CHECK(g.norm() == doctest::Approx(eps).epsilon(1e-10));
  // A far-off hint still brackets the same root.
  CHECK(pspg_theta(d, lambda, mu, eps, 1e6, 1e-12) ==
        doctest::Approx(theta).epsilon(1e-9));
  CHECK(pspg_theta(Matrix::Zero(2, 2), lambda, mu, eps, 1.0, 1e-12) == 0.0);
}

TEST_CASE("EMD baselines give zero flux for equal densities") {
  const Matrix rho = oracle::random_matrix(3, 6, 6).cwiseAbs();
  const EmdProblem p = EmdProblem::create(rho, rho);
  for (BaselineMethod m : {BaselineMethod::pdhg, BaselineMethod::gprox}) {
    BaselineConfig cfg;
    cfg.method = m;
    cfg.max_iters = 50;
    const EmdBaselineResult r = run_emd_baseline(p, cfg);
    CAPTURE(to_string(m));
    CHECK(r.m.norm() <= 1e-12);
    CHECK(r.distance <= 1e-10);
  }
}

TEST_CASE("EMD baselines approach the PP distance") {
  const EmdProblem p = point_pair();
  SolverConfig pc;
  pc.alpha = 0.01;
  pc.max_iters = 20000;
  const EmdResult pp = run_emd(p, pc);
  REQUIRE(pp.log.converged);
  for (BaselineMethod m : {BaselineMethod::pdhg, BaselineMethod::gprox}) {
    BaselineConfig cfg;
    cfg.method = m;
    cfg.max_iters = 10 * std::max(pp.log.iterations, 2000L);
    cfg.residual_tol = 0.0;
    cfg.log_every = cfg.max_iters;
    const EmdBaselineResult r = run_emd_baseline(p, cfg);
    CAPTURE(to_string(m));
    CHECK(std::abs(r.distance - pp.distance) <= 0.03 * pp.distance);
  }
}

TEST_CASE("SMC baselines stay at zero for a full mask and M = 0") {
  SmcProblem p;
  p.m_observed = Matrix::Zero(5, 5);
  p.omega = ObservationMask::full(5, 5);
  p.eps = 0.1;
  p.scale = 1.0;
  for (BaselineMethod m : {BaselineMethod::spg, BaselineMethod::vasalm}) {
    BaselineConfig cfg;
    cfg.method = m;
    cfg.max_iters = 10;
    const SmcBaselineResult r = run_smc_baseline(p, cfg);
    CAPTURE(to_string(m));
    CHECK(r.x.norm() == 0.0);
  }
  p.eps = 0.0;
  BaselineConfig spg;
  spg.method = BaselineMethod::spg;
  CHECK_THROWS_AS(run_smc_baseline(p, spg), ConfigError);
}

TEST_CASE("SPG settles above the PP objective") {
  const SmcInstance inst = gen_smc(20, 2, 5.0, smc_noise_sigma(2, 1e-1), 6);
  SolverConfig pc;
  pc.alpha = 1.0;
  pc.max_iters = 20000;
  pc.residual_tol = 1e-9;
  const SmcResult pp = run_smc(inst.problem, pc);
  BaselineConfig cfg;
  cfg.method = BaselineMethod::spg;
  cfg.mu = 1.0;
  cfg.max_iters = 20000;
  cfg.residual_tol = 1e-9;
  const SmcBaselineResult spg = run_smc_baseline(inst.problem, cfg);
  const double obj = pp.log.last().objective;
  CHECK(spg.log.last().objective > obj + 1e-3 * std::abs(obj));
  CHECK(spg.log.max_violation <= 1e-10);
}
