#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proxproj/bp.hpp"
#include "proxproj/emd.hpp"
#include "proxproj/smc.hpp"
#include "proxproj/spcp.hpp"

namespace proxproj {

enum class BaselineMethod { lb, lmm, pdhg, vasalm, pspg, pg, gprox, spg };

std::string to_string(BaselineMethod m);
/// Accepts the lower-case names used by to_string. Throws ConfigError.
BaselineMethod parse_baseline(const std::string& name);

/// Settings shared by all comparison methods. Unset step parameters take the
/// published defaults for the method and problem:
///
///   LB      mu = 2||AA^T||, alpha = 2/||AA^T||
///   LMM     lambda = 100||A^T A||, alpha = 1/(lambda ||A^T A||)
///   PDHG    BP: as LMM; EMD: lambda = 5, alpha = 1/(5||A^T A||)
///   VASALM  SPCP: eta = 3, alpha = 1e-5; SMC: eta = 3, alpha = 1e-2
///   PSPG    mu = delta/min(n1, n2), delta = 0.1 * reference objective
///   PG      mu = 1, alpha = mu
///   G-Prox  tau = 1e-4, sigma = 1e4
///   SPG     mu = 10
///
/// Step conditions are checked when a run starts. Parameters that sit on
/// the boundary of a strict condition (to 1e-12 relative) are accepted with
/// a warning; anything beyond it throws ConfigError.
struct BaselineConfig {
  BaselineMethod method = BaselineMethod::lb;
  std::optional<double> alpha;
  std::optional<double> lambda;
  std::optional<double> mu;
  std::optional<double> eta;
  std::optional<double> sigma;
  std::optional<double> tau;
  /// PSPG smoothing reference; defaults to the objective at the start point.
  std::optional<double> reference_objective;
  long max_iters = 1000;
  double residual_tol = 1e-10;
  /// Tolerance of the PSPG 1D root solve (relative to eps).
  double root_tol = 1e-12;
  double tau_tol = kDefaultTauTol;
  long log_every = 1;

  void validate() const;
};

struct BaselineResult {
  IterateLog log;
  std::vector<std::string> warnings;
};

struct BpBaselineResult : BaselineResult {
  Vector x;
};
struct SpcpBaselineResult : BaselineResult {
  Matrix l;
  Matrix s;
};
struct EmdBaselineResult : BaselineResult {
  Matrix m;
  double distance = 0.0;
};
struct SmcBaselineResult : BaselineResult {
  Matrix x;
};

/// LB, LMM or PDHG from x = v = 0. Metrics match run_bp; stopping also
/// requires the dual variable to settle.
BpBaselineResult run_bp_baseline(const BpProblem& p, const BaselineConfig& cfg);

/// VASALM, PSPG or PG from (L, S) = (M, 0). Metrics match run_spcp; VASALM
/// also waits for its multiplier to settle.
SpcpBaselineResult run_spcp_baseline(const SpcpProblem& p,
                                     const BaselineConfig& cfg);

/// PDHG or G-Prox PDHG from zero flux. Metrics match run_emd; stopping also
/// requires the dual variable to settle.
EmdBaselineResult run_emd_baseline(const EmdProblem& p,
                                   const BaselineConfig& cfg);

/// SPG or VASALM from X = P_omega(M). Metrics match run_smc.
SmcBaselineResult run_smc_baseline(SmcProblem p, const BaselineConfig& cfg);

/// Root theta > 0 of eps = ||min(lambda/theta, |d|/(1 + mu theta))||_F, or 0
/// when ||d||_F <= eps. Starts from `hint` and expands geometrically until
/// the root is enclosed. Throws ConvergenceError if no bracket is found.
double pspg_theta(const Matrix& d, double lambda, double mu, double eps,
                  double hint, double tol);

namespace detail {

/// Checks value < bound (strict). Equality to 1e-12 relative is accepted and
/// reported through `warnings`.
void check_strict_upper(const std::string& what, double value, double bound,
                        std::vector<std::string>& warnings);

}  // namespace detail

}  // namespace proxproj
