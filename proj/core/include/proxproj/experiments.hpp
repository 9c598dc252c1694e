#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "proxproj/baselines.hpp"
#include "proxproj/generators.hpp"

namespace proxproj {

/// Runs job(i) for i in [0, count) on up to `threads` workers (0 picks the
/// hardware concurrency). Results land in their own slots, so the output
/// order does not depend on scheduling. The first exception is rethrown.
template <class T>
std::vector<T> fan_out(std::size_t count, unsigned threads,
                       const std::function<T(std::size_t)>& job);

/// Settings for the matrix completion comparison. Parameters left at zero
/// are rescaled from their n = 1000 values by n/1000: PP alpha = 50,
/// SPG mu = 10, and VASALM alpha = 1e-2 (scaled by 1000/n).
struct SmcExperimentConfig {
  Index n = 200;
  /// eps / ||P_omega(M)||_F target; sets the noise level.
  double noise_ratio = 1e-1;
  double tol = 1e-5;
  long max_iters = 5000;
  double pp_alpha = 0.0;
  double vasalm_alpha = 0.0;
  double vasalm_eta = 3.0;
  double spg_mu = 0.0;
  unsigned threads = 1;

  double resolved_pp_alpha() const;
  double resolved_vasalm_alpha() const;
  double resolved_spg_mu() const;
};

struct SmcRunStats {
  long iterations = 0;
  double violation = 0.0;
  double objective = 0.0;
  bool converged = false;
};

struct SmcMethodSummary {
  std::string method;
  std::vector<SmcRunStats> runs;  // one per seed
  double median_iterations() const;
  double median_violation() const;
  double median_objective() const;
};

struct SmcTableRow {
  Index rank = 0;
  double oversample = 0.0;
  double s_over_n2 = 0.0;
  SmcMethodSummary pp;
  SmcMethodSummary vasalm;
  SmcMethodSummary spg;
};

struct SmcTableSpec {
  Index rank;
  double oversample;
};

/// PP, VASALM and SPG on gen_smc instances, one per (row, seed).
std::vector<SmcTableRow> table_smc(const std::vector<SmcTableSpec>& rows,
                                   const std::vector<std::uint64_t>& seeds,
                                   const SmcExperimentConfig& cfg);

/// Columns: rank, s_over_dr, s_over_n2, then iters/viol/objective medians
/// for pp, vasalm and spg.
void write_table_smc_csv(std::ostream& os, const std::vector<SmcTableRow>& t);

double median(std::vector<double> v);

}  // namespace proxproj

#include "proxproj/detail/fan_out.hpp"
