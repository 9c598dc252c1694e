#include <cmath>

#include "proxproj/baselines.hpp"

namespace proxproj {

SmcBaselineResult run_smc_baseline(SmcProblem p, const BaselineConfig& cfg) {
  p.validate();
  cfg.validate();
  const double scale = p.residual_scale();
  const Matrix pm = mask_project(p.m_observed, p.omega);
  SmcBaselineResult out;

  double mu = 0.0;
  double alpha = 0.0;
  double eta = 0.0;
  switch (cfg.method) {
    case BaselineMethod::spg:
      if (!(p.eps > 0.0)) throw ConfigError("SPG needs eps > 0");
      mu = cfg.mu.value_or(10.0);
      break;
    case BaselineMethod::vasalm:
      alpha = cfg.alpha.value_or(1e-2);
      eta = cfg.eta.value_or(3.0);
      if (!(eta > 2.0)) throw ConfigError("VASALM needs eta > 2");
      break;
    default:
      throw ConfigError("method '" + to_string(cfg.method) +
                        "' is not an SMC baseline");
  }

  Matrix x = pm;
  Matrix lam = Matrix::Zero(x.rows(), x.cols());
  IterationRecorder rec(cfg.max_iters, cfg.log_every);
  bool converged = false;
  for (long k = 1; k <= cfg.max_iters; ++k) {
    rec.begin();
    Matrix next;
    if (cfg.method == BaselineMethod::spg) {
      next = svt(x, mu);
      double acc = 0.0;
      for (const auto& [i, j] : p.omega.entries()) {
        const double d = p.m_observed(i, j) - next(i, j);
        acc += d * d;
      }
      const double theta =
          std::max(0.0, (std::sqrt(acc) - p.eps) / (mu * p.eps));
      const double mt = mu * theta;
      for (const auto& [i, j] : p.omega.entries()) {
        next(i, j) = (mt * p.m_observed(i, j) + next(i, j)) / (1.0 + mt);
      }
    } else {
      // N = P_K(lam/alpha + P(M) - X): eps-ball on the observed entries only.
      Matrix nn = lam / alpha + pm - x;
      const double nv = mask_norm(nn, p.omega);
      if (nv > p.eps) {
        const double shrink_by = p.eps / nv;
        for (const auto& [i, j] : p.omega.entries()) nn(i, j) *= shrink_by;
      }
      const Matrix lhat = lam - alpha * (x + nn - pm);
      const double step = 1.0 / (eta * alpha);
      next = svt(x + step * lhat, step);
      lam = lhat + alpha * (x - next);
    }
    double residual = std::numeric_limits<double>::infinity();
    if (k > 1) {
      residual = (next - x).norm() / scale;
      converged = residual_converged(residual, cfg.residual_tol, 1.0);
    }
    x = std::move(next);
    const bool last = converged || k == cfg.max_iters;
    rec.record(k, smc_violation(p, x), residual, last,
               [&] { return smc_objective(x); });
    if (last) break;
  }
  out.log = rec.finish(converged);
  out.x = std::move(x);
  return out;
}

}  // namespace proxproj
