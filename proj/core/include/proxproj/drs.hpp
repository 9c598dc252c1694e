#pragma once

#include <chrono>
#include <functional>
#include <limits>
#include <vector>

#include "proxproj/projection.hpp"
#include "proxproj/prox.hpp"

namespace proxproj {

struct SolverConfig {
  double alpha = 1.0;
  long max_iters = 1000;
  /// Stop when ||x^{k+1} - x^k|| <= residual_tol * scale. Zero disables.
  double residual_tol = 1e-10;
  double tau_tol = kDefaultTauTol;
  long log_every = 1;

  /// Throws ConfigError on alpha <= 0, max_iters < 1, log_every < 1 or a
  /// negative tolerance.
  void validate() const;
};

struct MetricRow {
  long iter = 0;
  double violation = 0.0;
  double objective = 0.0;
  /// Update residual; +inf on the first iteration.
  double residual = std::numeric_limits<double>::infinity();
  double wall_ms = 0.0;
};

struct IterateLog {
  std::vector<MetricRow> rows;
  long iterations = 0;
  bool converged = false;
  /// Largest violation over every iteration, logged or not.
  double max_violation = 0.0;

  const MetricRow& last() const { return rows.back(); }
};

/// Shared bookkeeping for iterative solvers: timing, the logging cadence and
/// the running maximum of the violation. The final iteration is always
/// logged.
class IterationRecorder {
 public:
  IterationRecorder(long max_iters, long log_every);

  void begin();
  bool should_log(long k, bool last) const {
    return last || k % log_every_ == 0;
  }
  /// `objective` is only called when the row is logged.
  void record(long k, double violation, double residual, bool last,
              const std::function<double()>& objective);
  IterateLog finish(bool converged);

 private:
  using Clock = std::chrono::steady_clock;
  long max_iters_;
  long log_every_;
  Clock::time_point start_;
  IterateLog log_;
};

/// Tolerance on ||Ax - b|| - eps allowed for PP iterates.
inline double feasibility_slack(double eps, double tau_tol) {
  return 10.0 * tau_tol * (1.0 + eps);
}

/// Stop test shared by all solvers: residual <= tol * scale, with tol = 0
/// meaning "run to max_iters".
inline bool residual_converged(double residual, double tol, double scale) {
  return tol > 0.0 && residual <= tol * scale;
}

struct SolverState {
  Vector z;
  Vector x;
  long k = 0;
};

/// One PP update: x' = P_C(z), z' = z + prox(2x' - z, alpha) - x'.
SolverState pp_step(const SolverState& state, const ConstraintSpec& spec,
                    const ProxOperator& prox, const SolverConfig& cfg);

struct PpResult {
  IterateLog log;
  Vector x;
  Vector z;
};

using Objective = std::function<double(const Vector&)>;

/// Runs pp_step from z0 until both ||x^{k+1} - x^k|| <= residual_tol *
/// max(1, ||x^k||) and the same relative test holds for z, or max_iters.
/// The logged residual is the absolute ||x^{k+1} - x^k||.
PpResult run_pp(const ConstraintSpec& spec, const ProxOperator& prox,
                const Objective& objective, const SolverConfig& cfg,
                const Vector& z0);

/// Prox of alpha*||.||_1.
ProxOperator l1_prox();

}  // namespace proxproj
