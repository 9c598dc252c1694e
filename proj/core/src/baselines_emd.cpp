#include <cmath>

#include "proxproj/baselines.hpp"

namespace proxproj {

EmdBaselineResult run_emd_baseline(const EmdProblem& p,
                                   const BaselineConfig& cfg) {
  cfg.validate();
  const EmdOperator& op = *p.op;
  const Index n = p.n();
  const Matrix rhs = p.rhs();
  EmdBaselineResult out;

  double alpha = 0.0;
  double lambda = 0.0;
  double sigma = 0.0;
  double tau = 0.0;
  switch (cfg.method) {
    case BaselineMethod::pdhg:
      lambda = cfg.lambda.value_or(5.0);
      alpha = cfg.alpha.value_or(1.0 / (lambda * op.norm_sq()));
      detail::check_strict_upper("alpha*lambda*||A^T A||",
                                 alpha * lambda * op.norm_sq(), 1.0,
                                 out.warnings);
      break;
    case BaselineMethod::gprox:
      tau = cfg.tau.value_or(1e-4);
      sigma = cfg.sigma.value_or(1e4);
      detail::check_strict_upper("sigma*tau", sigma * tau, 1.0, out.warnings);
      break;
    default:
      throw ConfigError("method '" + to_string(cfg.method) +
                        "' is not an EMD baseline");
  }

  const Matrix zero_flux = Matrix::Zero(2 * (n - 1), n);
  const Matrix zero_rhs = Matrix::Zero(n, n);
  // G-Prox splits m = u + grad_psi with a fixed particular solution.
  const Matrix grad_psi = cfg.method == BaselineMethod::gprox
                              ? op.project(zero_flux, rhs, p.eps, cfg.tau_tol)
                              : zero_flux;
  Matrix m = zero_flux;
  Matrix u = zero_flux;
  Matrix dual = cfg.method == BaselineMethod::gprox ? zero_flux : zero_rhs;
  IterationRecorder rec(cfg.max_iters, cfg.log_every);
  bool converged = false;
  for (long k = 1; k <= cfg.max_iters; ++k) {
    rec.begin();
    const Matrix dual_prev = dual;
    Matrix next;
    if (cfg.method == BaselineMethod::pdhg) {
      // Equality form div(m) = rho0 - rho1.
      next = shrink(m - alpha * op.adjoint(dual), alpha);
      dual += lambda * (op.divergence(2.0 * next - m) + rhs);
    } else {
      Matrix w = dual + sigma * (u + grad_psi);
      const Matrix pn = w.array() / w.array().abs().max(1.0);
      u -= tau * op.project(2.0 * pn - dual, zero_rhs, p.eps, cfg.tau_tol);
      dual = pn;
      next = u + grad_psi;
    }
    double residual = std::numeric_limits<double>::infinity();
    if (k > 1) {
      residual = (next - m).norm();
      converged = residual_converged(residual, cfg.residual_tol,
                                     std::max(1.0, m.norm())) &&
                  residual_converged((dual - dual_prev).norm(), cfg.residual_tol,
                                     std::max(1.0, dual_prev.norm()));
    }
    m = std::move(next);
    const bool last = converged || k == cfg.max_iters;
    rec.record(k, emd_violation(p, m), residual, last,
               [&] { return emd_objective(m); });
    if (last) break;
  }
  out.log = rec.finish(converged);
  out.distance = p.h * emd_objective(m);
  out.m = std::move(m);
  return out;
}

}  // namespace proxproj
