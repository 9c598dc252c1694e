#include "proxproj/experiments.hpp"

#include <algorithm>
#include <ostream>

#include "proxproj/io.hpp"

namespace proxproj {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

namespace {

double rescale(Index n) { return static_cast<double>(n) / 1000.0; }

template <class F>
double median_of(const std::vector<SmcRunStats>& runs, F field) {
  std::vector<double> v;
  v.reserve(runs.size());
  for (const auto& r : runs) v.push_back(field(r));
  return median(std::move(v));
}

SmcRunStats stats_of(const IterateLog& log) {
  return {log.iterations, log.last().violation, log.last().objective,
          log.converged};
}

}  // namespace

double SmcExperimentConfig::resolved_pp_alpha() const {
  return pp_alpha > 0.0 ? pp_alpha : 50.0 * rescale(n);
}
double SmcExperimentConfig::resolved_vasalm_alpha() const {
  return vasalm_alpha > 0.0 ? vasalm_alpha : 1e-2 / rescale(n);
}
double SmcExperimentConfig::resolved_spg_mu() const {
  return spg_mu > 0.0 ? spg_mu : 10.0 * rescale(n);
}

double SmcMethodSummary::median_iterations() const {
  return median_of(runs, [](const SmcRunStats& r) { return double(r.iterations); });
}
double SmcMethodSummary::median_violation() const {
  return median_of(runs, [](const SmcRunStats& r) { return r.violation; });
}
double SmcMethodSummary::median_objective() const {
  return median_of(runs, [](const SmcRunStats& r) { return r.objective; });
}

std::vector<SmcTableRow> table_smc(const std::vector<SmcTableSpec>& rows,
                                   const std::vector<std::uint64_t>& seeds,
                                   const SmcExperimentConfig& cfg) {
  struct Triple {
    SmcRunStats pp, vasalm, spg;
  };
  const std::size_t per_row = seeds.size();
  const std::function<Triple(std::size_t)> job = [&](std::size_t idx) {
    const SmcTableSpec& spec = rows[idx / per_row];
    const std::uint64_t seed = seeds[idx % per_row];
    const SmcInstance inst =
        gen_smc(cfg.n, spec.rank, spec.oversample,
                smc_noise_sigma(spec.rank, cfg.noise_ratio), seed);
    Triple t;
    SolverConfig pc;
    pc.alpha = cfg.resolved_pp_alpha();
    pc.max_iters = cfg.max_iters;
    pc.residual_tol = cfg.tol;
    pc.log_every = cfg.max_iters;  // final row only
    t.pp = stats_of(run_smc(inst.problem, pc).log);

    BaselineConfig bc;
    bc.max_iters = cfg.max_iters;
    bc.residual_tol = cfg.tol;
    bc.log_every = cfg.max_iters;
    bc.method = BaselineMethod::vasalm;
    bc.alpha = cfg.resolved_vasalm_alpha();
    bc.eta = cfg.vasalm_eta;
    t.vasalm = stats_of(run_smc_baseline(inst.problem, bc).log);

    BaselineConfig sc = bc;
    sc.method = BaselineMethod::spg;
    sc.alpha.reset();
    sc.eta.reset();
    sc.mu = cfg.resolved_spg_mu();
    t.spg = stats_of(run_smc_baseline(inst.problem, sc).log);
    return t;
  };
  const std::vector<Triple> all =
      fan_out<Triple>(rows.size() * per_row, cfg.threads, job);

  std::vector<SmcTableRow> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    SmcTableRow row;
    row.rank = rows[r].rank;
    row.oversample = rows[r].oversample;
    const double n2 = static_cast<double>(cfg.n) * static_cast<double>(cfg.n);
    row.s_over_n2 =
        std::round(rows[r].oversample * smc_degrees_of_freedom(cfg.n, rows[r].rank)) /
        n2;
    row.pp.method = "pp";
    row.vasalm.method = "vasalm";
    row.spg.method = "spg";
    for (std::size_t s = 0; s < per_row; ++s) {
      const Triple& t = all[r * per_row + s];
      row.pp.runs.push_back(t.pp);
      row.vasalm.runs.push_back(t.vasalm);
      row.spg.runs.push_back(t.spg);
    }
    out.push_back(std::move(row));
  }
  return out;
}

void write_table_smc_csv(std::ostream& os, const std::vector<SmcTableRow>& t) {
  os << "rank,s_over_dr,s_over_n2";
  for (const char* m : {"pp", "vasalm", "spg"}) {
    os << ',' << m << "_iters," << m << "_viol," << m << "_objective";
  }
  os << '\n';
  for (const SmcTableRow& r : t) {
    os << r.rank << ',' << format_double(r.oversample) << ','
       << format_double(r.s_over_n2);
    for (const SmcMethodSummary* m : {&r.pp, &r.vasalm, &r.spg}) {
      os << ',' << format_double(m->median_iterations()) << ','
         << format_double(m->median_violation()) << ','
         << format_double(m->median_objective());
    }
    os << '\n';
  }
}

}  // namespace proxproj
