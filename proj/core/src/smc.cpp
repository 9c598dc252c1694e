#include "proxproj/smc.hpp"

#include <cmath>

namespace proxproj {

void SmcProblem::validate() {
  omega.check_shape(m_observed);
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw IllPosedError("SMC: eps must be finite and >= 0");
  }
  if (eps == 0.0 && !omega.covers_all()) {
    throw IllPosedError(
        "SMC: eps = 0 needs every entry observed (the mask is rank deficient)");
  }
  if (!(scale > 0.0)) scale = mask_norm(m_observed, omega);
}

double SmcProblem::residual_scale() const { return scale > 0.0 ? scale : 1.0; }

Matrix smc_project(const Matrix& z, const SmcProblem& p) {
  p.omega.check_shape(z);
  double acc = 0.0;
  for (const auto& [i, j] : p.omega.entries()) {
    const double d = z(i, j) - p.m_observed(i, j);
    acc += d * d;
  }
  const double v = std::sqrt(acc);
  if (v <= p.eps) return z;
  Matrix x = z;
  const double w = (v - p.eps) / v;
  const double t = p.eps / v;
  for (const auto& [i, j] : p.omega.entries()) {
    x(i, j) = w * p.m_observed(i, j) + t * z(i, j);
  }
  return x;
}

double smc_violation(const SmcProblem& p, const Matrix& x) {
  double acc = 0.0;
  for (const auto& [i, j] : p.omega.entries()) {
    const double d = x(i, j) - p.m_observed(i, j);
    acc += d * d;
  }
  const double gap = std::sqrt(acc);
  if (p.eps == 0.0) return gap;
  return std::max(gap - p.eps, 0.0) / p.eps;
}

double smc_objective(const Matrix& x) { return nuclear_norm(x); }

SmcResult run_smc(SmcProblem p, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  const double scale = p.residual_scale();
  Matrix z = mask_project(p.m_observed, p.omega);
  Matrix x = z;
  IterationRecorder rec(cfg.max_iters, cfg.log_every);
  bool converged = false;
  for (long k = 1; k <= cfg.max_iters; ++k) {
    rec.begin();
    z += svt(2.0 * x - z, cfg.alpha) - x;
    Matrix next = smc_project(z, p);
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
  return {rec.finish(converged), std::move(x)};
}

double smc_degrees_of_freedom(Index n, Index r) {
  return static_cast<double>(r) * static_cast<double>(2 * n - r);
}

}  // namespace proxproj
