#include "proxproj/drs.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

namespace proxproj {

void SolverConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha must be positive and finite, got " +
                      std::to_string(alpha));
  }
  if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
  if (log_every < 1) throw ConfigError("log_every must be >= 1");
  if (!(residual_tol >= 0.0)) throw ConfigError("residual_tol must be >= 0");
  if (!(tau_tol > 0.0)) throw ConfigError("tau_tol must be > 0");
}

IterationRecorder::IterationRecorder(long max_iters, long log_every)
    : max_iters_(max_iters), log_every_(std::max(1L, log_every)) {
  log_.rows.reserve(static_cast<std::size_t>(
      std::min(max_iters_ / log_every_ + 1, 100000L)));
}

void IterationRecorder::begin() { start_ = Clock::now(); }

void IterationRecorder::record(long k, double violation, double residual,
                               bool last,
                               const std::function<double()>& objective) {
  log_.iterations = k;
  if (std::isnan(violation)) {
    log_.max_violation = violation;
  } else if (!std::isnan(log_.max_violation)) {
    log_.max_violation = std::max(log_.max_violation, violation);
  }
  if (!should_log(k, last)) return;
  MetricRow row;
  row.iter = k;
  row.violation = violation;
  row.residual = residual;
  row.objective = objective();
  row.wall_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  log_.rows.push_back(row);
}

IterateLog IterationRecorder::finish(bool converged) {
  log_.converged = converged;
  return std::move(log_);
}

SolverState pp_step(const SolverState& state, const ConstraintSpec& spec,
                    const ProxOperator& prox, const SolverConfig& cfg) {
  if (state.z.size() != spec.cols()) {
    throw ShapeError("pp_step: z has length " + std::to_string(state.z.size()) +
                     ", expected " + std::to_string(spec.cols()));
  }
  SolverState next;
  next.x = project(spec, state.z, cfg.tau_tol);
  next.z = state.z + prox(2.0 * next.x - state.z, cfg.alpha) - next.x;
  next.k = state.k + 1;
  return next;
}

PpResult run_pp(const ConstraintSpec& spec, const ProxOperator& prox,
                const Objective& objective, const SolverConfig& cfg,
                const Vector& z0) {
  cfg.validate();
  IterationRecorder rec(cfg.max_iters, cfg.log_every);
  SolverState state{z0, Vector(), 0};
  const double slack = feasibility_slack(spec.eps(), cfg.tau_tol);
  bool converged = false;
  Vector prev;
  for (long k = 1; k <= cfg.max_iters; ++k) {
    rec.begin();
    Vector z_prev = state.z;
    state = pp_step(state, spec, prox, cfg);
    const double viol = spec.violation(state.x);
    assert(viol <= spec.eps() + slack);
    (void)slack;
    double residual = std::numeric_limits<double>::infinity();
    if (k > 1) {
      residual = (state.x - prev).norm();
      // x can stall for a step while z is still moving, so z must settle too.
      converged =
          residual_converged(residual, cfg.residual_tol,
                             std::max(1.0, prev.norm())) &&
          residual_converged((state.z - z_prev).norm(), cfg.residual_tol,
                             std::max(1.0, z_prev.norm()));
    }
    const bool last = converged || k == cfg.max_iters;
    rec.record(k, viol, residual, last, [&] { return objective(state.x); });
    if (last) break;
    prev = state.x;
  }
  return {rec.finish(converged), std::move(state.x), std::move(state.z)};
}

ProxOperator l1_prox() {
  return [](const Vector& v, double alpha) -> Vector {
    return shrink(v, alpha);
  };
}

}  // namespace proxproj
