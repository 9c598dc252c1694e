#include <cmath>

#include "proxproj/baselines.hpp"

namespace proxproj {

BpBaselineResult run_bp_baseline(const BpProblem& p, const BaselineConfig& cfg) {
  cfg.validate();
  if (p.a.rows() != p.b.size()) throw ShapeError("BP: A and b disagree");
  const Matrix& a = p.a;
  const Matrix at = a.transpose();
  const double nrm = spectral_norm_sq(a);  // ||AA^T|| = ||A^T A||

  BpBaselineResult out;
  double alpha = 0.0;
  double weight = 0.0;  // mu for LB, lambda for LMM and PDHG
  switch (cfg.method) {
    case BaselineMethod::lb:
      weight = cfg.mu.value_or(2.0 * nrm);
      alpha = cfg.alpha.value_or(2.0 / nrm);
      detail::check_strict_upper("LB alpha", alpha, 2.0 / nrm, out.warnings);
      break;
    case BaselineMethod::lmm:
    case BaselineMethod::pdhg:
      weight = cfg.lambda.value_or(100.0 * nrm);
      alpha = cfg.alpha.value_or(1.0 / (weight * nrm));
      detail::check_strict_upper("alpha*lambda*||A^T A||", alpha * weight * nrm,
                                 1.0, out.warnings);
      break;
    default:
      throw ConfigError("method '" + to_string(cfg.method) +
                        "' is not a basis pursuit baseline");
  }

  const Index n = a.cols();
  Vector x = Vector::Zero(n);
  Vector v = Vector::Zero(cfg.method == BaselineMethod::lb ? n : a.rows());
  IterationRecorder rec(cfg.max_iters, cfg.log_every);
  bool converged = false;
  for (long k = 1; k <= cfg.max_iters; ++k) {
    rec.begin();
    const Vector v_prev = v;
    Vector next;
    switch (cfg.method) {
      case BaselineMethod::lb:
        v -= at * (a * x - p.b);
        next = shrink(alpha * v, alpha * weight);
        break;
      case BaselineMethod::lmm:
        next = shrink(x - alpha * (at * (v + weight * (a * x - p.b))), alpha);
        v += weight * (a * next - p.b);
        break;
      default:  // pdhg
        next = shrink(x - alpha * (at * v), alpha);
        v += weight * (a * (2.0 * next - x) - p.b);
        break;
    }
    double residual = std::numeric_limits<double>::infinity();
    if (k > 1) {
      residual = (next - x).norm();
      // LB keeps x = 0 while v builds up; the dual has to settle as well.
      converged = residual_converged(residual, cfg.residual_tol,
                                     std::max(1.0, x.norm())) &&
                  residual_converged((v - v_prev).norm(), cfg.residual_tol,
                                     std::max(1.0, v_prev.norm()));
    }
    x = std::move(next);
    const bool last = converged || k == cfg.max_iters;
    rec.record(k, bp_violation(p, x), residual, last,
               [&] { return bp_objective(x); });
    if (last) break;
  }
  out.log = rec.finish(converged);
  out.x = std::move(x);
  return out;
}

}  // namespace proxproj
