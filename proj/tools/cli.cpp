#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "proxproj/baselines.hpp"
#include "proxproj/errors.hpp"
#include "proxproj/experiments.hpp"
#include "proxproj/generators.hpp"
#include "proxproj/io.hpp"
#include "proxproj/manifest.hpp"
#include "proxproj/projection.hpp"

namespace ppbench {

using namespace proxproj;

namespace {

struct Common {
  std::string method = "pp";
  std::uint64_t seed = 1;
  std::optional<double> alpha;
  long max_iters = 1000;
  double tol = 1e-10;
  long log_every = 1;
  std::string out;
  std::string config;
  // Baseline step parameters; unset means the method default.
  std::optional<double> mu;
  std::optional<double> eta;
  std::optional<double> step_lambda;
  std::optional<double> sigma;
  std::optional<double> tau;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--method", c.method, "pp or a baseline name");
  sub->add_option("--seed", c.seed, "Generator seed");
  sub->add_option("--alpha", c.alpha, "Step size (method default if unset)");
  sub->add_option("--max-iters", c.max_iters, "Iteration cap")
      ->check(CLI::PositiveNumber);
  sub->add_option("--tol", c.tol, "Relative update tolerance, 0 disables")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--log-every", c.log_every, "Log every k-th iteration")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "Write <out>.csv and <out>.manifest");
  sub->add_option("--config", c.config, "Flat key = value file; flags win");
  sub->add_option("--mu", c.mu, "Baseline smoothing / penalty parameter");
  sub->add_option("--eta", c.eta, "VASALM penalty growth");
  sub->add_option("--sigma", c.sigma, "G-Prox dual step");
  sub->add_option("--tau", c.tau, "G-Prox primal step");
}

SolverConfig pp_config(const Common& c, double default_alpha = 1.0) {
  SolverConfig s;
  s.alpha = c.alpha.value_or(default_alpha);
  s.max_iters = c.max_iters;
  s.residual_tol = c.tol;
  s.log_every = c.log_every;
  return s;
}

BaselineConfig baseline_config(const Common& c, BaselineMethod m) {
  BaselineConfig b;
  b.method = m;
  b.alpha = c.alpha;
  b.lambda = c.step_lambda;
  b.mu = c.mu;
  b.eta = c.eta;
  b.sigma = c.sigma;
  b.tau = c.tau;
  b.max_iters = c.max_iters;
  b.residual_tol = c.tol;
  b.log_every = c.log_every;
  return b;
}

/// nullopt for PP; otherwise the baseline, checked against `allowed`.
std::optional<BaselineMethod> pick_method(
    const std::string& name, const std::string& app,
    std::initializer_list<BaselineMethod> allowed) {
  if (name == "pp") return std::nullopt;
  const BaselineMethod m = parse_baseline(name);
  if (std::find(allowed.begin(), allowed.end(), m) == allowed.end()) {
    std::string list = "pp";
    for (BaselineMethod a : allowed) list += ", " + to_string(a);
    throw ConfigError("method '" + name + "' does not apply to " + app +
                      " (choose from " + list + ")");
  }
  return m;
}

Matrix load_matrix(const std::string& path) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
    return read_matrix_csv(path);
  }
  return read_matrix(path);
}

struct RunOutput {
  std::string method;
  IterateLog log;
  std::vector<std::string> warnings;
  std::string input_bytes;  // encoded problem data, hashed into the manifest
  RunManifest extra;
};

std::string metrics_hash(const IterateLog& log) {
  IterateLog copy = log;
  for (MetricRow& r : copy.rows) r.wall_ms = 0.0;
  std::ostringstream os;
  write_metrics_csv(os, copy);
  return git_blob_hash(os.str());
}

/// Every option that has a value, keyed by its long name.
void record_options(const CLI::App* sub, RunManifest& m) {
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "config" || name == "out") continue;
    std::string value;
    if (opt->count() > 0) {
      for (const std::string& r : opt->results()) {
        value += (value.empty() ? "" : ",") + r;
      }
    } else if (opt->get_items_expected_max() <= 1) {
      value = opt->get_default_str();
    }
    if (!value.empty()) m.set(name, value);
  }
}

void emit(const CLI::App* sub, const Common& c, RunOutput& r,
          std::ostream& out, std::ostream& err) {
  for (const std::string& w : r.warnings) err << "warning: " << w << '\n';
  if (!c.out.empty()) {
    write_metrics_csv(c.out + ".csv", r.log);
    RunManifest& m = r.extra;
    record_options(sub, m);
    m.set("run.app", sub->get_name());
    m.set("run.iterations", r.log.iterations);
    m.set("run.converged", r.log.converged ? "true" : "false");
    m.set("hash.input", git_blob_hash(r.input_bytes));
    m.set("hash.metrics", metrics_hash(r.log));
    m.set("output.csv", c.out + ".csv");
    m.write(c.out + ".manifest");
  }
  const MetricRow& last = r.log.last();
  out << r.method << ' ' << r.log.iterations << ' '
      << format_double(last.violation) << ' ' << format_double(last.objective)
      << ' ' << format_double(last.residual) << '\n';
}

// ---- problem sources -------------------------------------------------------

struct BpSource {
  Index m = 50;
  Index n = 200;
  double p = 0.05;
  std::string matrix;
  std::string b;

  void add(CLI::App* sub) {
    sub->add_option("--m", m, "Rows of A")->check(CLI::PositiveNumber);
    sub->add_option("--n", n, "Columns of A")->check(CLI::PositiveNumber);
    sub->add_option("--p", p, "Nonzero probability of x*");
    sub->add_option("--matrix", matrix, "Load A (PPMAT1 or CSV)");
    sub->add_option("--b", b, "Load b (PPVEC1)");
  }
  BpInstance make(std::uint64_t seed) const {
    if (matrix.empty() != b.empty()) {
      throw ConfigError("--matrix and --b must be given together");
    }
    if (matrix.empty()) return gen_bp(m, n, p, seed);
    BpInstance inst;
    inst.problem.a = load_matrix(matrix);
    inst.problem.b = read_vector(b);
    return inst;
  }
};

struct SpcpSource {
  Index n1 = 60;
  Index n2 = 40;
  Index rank = 3;
  double sparse = 0.05;
  double noise = 1e-2;
  std::optional<double> lambda;
  std::optional<double> eps;
  std::string matrix;

  void add(CLI::App* sub) {
    sub->add_option("--n1", n1, "Rows of M")->check(CLI::PositiveNumber);
    sub->add_option("--n2", n2, "Columns of M")->check(CLI::PositiveNumber);
    sub->add_option("--rank", rank, "Rank of the low-rank part");
    sub->add_option("--sparse", sparse, "Fraction of sparse corruptions");
    sub->add_option("--noise", noise, "Dense noise standard deviation");
    sub->add_option("--lambda", lambda, "Sparse weight (1/sqrt(n1) if unset)");
    sub->add_option("--eps", eps, "Noise bound (||N||_F if unset)");
    sub->add_option("--matrix", matrix, "Load M instead of generating");
  }
  SpcpProblem make(std::uint64_t seed) const {
    SpcpProblem p;
    if (matrix.empty()) {
      p = gen_spcp(n1, n2, rank, sparse, noise, seed).problem;
    } else {
      if (!eps) throw ConfigError("--eps is required with --matrix");
      p.m = load_matrix(matrix);
      p.lambda = SpcpProblem::default_lambda(p.m.rows());
    }
    if (eps) p.eps = *eps;
    if (lambda) p.lambda = *lambda;
    p.validate();
    return p;
  }
};

struct SmcSource {
  Index n = 200;
  Index rank = 5;
  double oversample = 5.0;
  double noise_ratio = 1e-1;
  std::optional<double> eps;
  std::optional<double> scale;
  std::string matrix;
  std::string mask;

  void add(CLI::App* sub) {
    sub->add_option("--n", n, "Matrix size")->check(CLI::PositiveNumber);
    sub->add_option("--rank", rank, "Rank of the planted matrix");
    sub->add_option("--oversample", oversample, "Samples per degree of freedom");
    sub->add_option("--noise-ratio", noise_ratio, "Target eps / ||P(M)||_F");
    sub->add_option("--eps", eps, "Noise bound (measured noise if unset)");
    sub->add_option("--scale", scale, "Residual normalizer");
    sub->add_option("--matrix", matrix, "Load observed M instead of generating");
    sub->add_option("--mask", mask, "Load mask; nonzero entries are observed");
  }
  SmcProblem make(std::uint64_t seed) const {
    SmcProblem p;
    if (matrix.empty()) {
      p = gen_smc(n, rank, oversample, smc_noise_sigma(rank, noise_ratio), seed)
              .problem;
    } else {
      if (mask.empty() || !eps) {
        throw ConfigError("--mask and --eps are required with --matrix");
      }
      p.m_observed = load_matrix(matrix);
      const Matrix w = load_matrix(mask);
      if (w.rows() != p.m_observed.rows() || w.cols() != p.m_observed.cols()) {
        throw ShapeError("mask and matrix shapes differ");
      }
      std::vector<std::pair<Index, Index>> entries;
      for (Index i = 0; i < w.rows(); ++i) {
        for (Index j = 0; j < w.cols(); ++j) {
          if (w(i, j) != 0.0) entries.emplace_back(i, j);
        }
      }
      p.omega = ObservationMask(w.rows(), w.cols(), std::move(entries));
    }
    if (eps) p.eps = *eps;
    if (scale) p.scale = *scale;
    p.validate();
    return p;
  }
  /// Method step defaults rescaled to the matrix size.
  SmcExperimentConfig defaults(Index rows) const {
    SmcExperimentConfig e;
    e.n = rows;
    return e;
  }
};

struct EmdSource {
  Index n = 16;
  std::string pair = "points";
  std::vector<Index> points;
  int blobs = 3;
  double blob_width = 0.08;
  std::string image0;
  std::string image1;
  std::string rho0;
  std::string rho1;
  bool invert = true;
  double threshold = 0.5;
  double eps = 1e-10;
  double h = 1.0;

  void add(CLI::App* sub) {
    sub->add_option("--n", n, "Grid size")->check(CLI::Range(2, 4096));
    sub->add_option("--pair", pair, "Density pair: points, blobs or pgm")
        ->check(CLI::IsMember({"points", "blobs", "pgm"}));
    sub->add_option("--points", points, "r0,c0,r1,c1 for the point pair")
        ->expected(4)
        ->delimiter(',');
    sub->add_option("--blobs", blobs, "Gaussian blobs per density");
    sub->add_option("--blob-width", blob_width, "Blob width as a fraction of n");
    sub->add_option("--image0", image0, "Source density image (PGM)");
    sub->add_option("--image1", image1, "Target density image (PGM)");
    sub->add_option("--invert", invert, "Dark pixels carry mass");
    sub->add_option("--threshold", threshold, "Zero densities below this");
    sub->add_option("--rho0", rho0, "Load the source density (PPMAT1 or CSV)");
    sub->add_option("--rho1", rho1, "Load the target density (PPMAT1 or CSV)");
    sub->add_option("--eps", eps, "Constraint tolerance");
    sub->add_option("--spacing", h, "Grid spacing");
  }
  EmdProblem make(std::uint64_t seed) const {
    if (!rho0.empty() || !rho1.empty()) {
      if (rho0.empty() || rho1.empty()) {
        throw ConfigError("--rho0 and --rho1 must be given together");
      }
      return EmdProblem::create(load_matrix(rho0), load_matrix(rho1), eps, h,
                                true);
    }
    EmdPairParams params;
    params.blob_count = blobs;
    params.blob_width = blob_width;
    params.invert = invert;
    params.threshold = threshold;
    params.eps = eps;
    params.h = h;
    EmdPairKind kind = EmdPairKind::point_masses;
    Index size = n;
    if (pair == "points") {
      if (!points.empty()) {
        params.points = std::array<Index, 4>{points[0], points[1], points[2],
                                             points[3]};
      }
    } else if (pair == "blobs") {
      kind = EmdPairKind::blobs;
    } else {
      if (image0.empty() || image1.empty()) {
        throw ConfigError("--pair pgm needs --image0 and --image1");
      }
      kind = EmdPairKind::loaded_pgm;
      params.image0 = read_pgm(image0);
      params.image1 = read_pgm(image1);
      size = params.image0.rows();
    }
    return gen_emd_pair(kind, size, params, seed);
  }
};

std::string encode(const Matrix& a) { return encode_matrix(a); }
std::string encode(const Vector& v) { return encode_vector(v); }

std::string smc_bytes(const SmcProblem& p) {
  Matrix w = Matrix::Zero(p.omega.rows(), p.omega.cols());
  for (const auto& [i, j] : p.omega.entries()) w(i, j) = 1.0;
  return encode(mask_project(p.m_observed, p.omega)) + encode(w) +
         encode(Vector(Vector::Constant(1, p.eps)));
}

// ---- subcommands -----------------------------------------------------------

struct Cli {
  CLI::App app{"Proximal projection solvers and baselines", "ppbench"};
  Common bp_c, spcp_c, emd_c, smc_c;
  double bp_eps = 0.0;
  BpSource bp_src;
  SpcpSource spcp_src;
  EmdSource emd_src;
  SmcSource smc_src;

  // project
  std::string pr_matrix, pr_b, pr_x, pr_out = "projected", pr_config;
  double pr_eps = 0.0;
  double pr_tol = kDefaultTauTol;

  // gen
  std::string gen_out = "problem", gen_config;
  std::uint64_t gen_seed = 1;
  BpSource gen_bp;
  SpcpSource gen_spcp;
  EmdSource gen_emd;
  SmcSource gen_smc;

  // table-smc
  SmcExperimentConfig tab;
  std::string tab_rows = "5:5,10:4";
  std::uint64_t tab_seed = 1;
  int tab_seeds = 5;
  std::string tab_out, tab_config;

  CLI::App* bp = nullptr;
  CLI::App* spcp = nullptr;
  CLI::App* emd = nullptr;
  CLI::App* smc = nullptr;
  CLI::App* project = nullptr;
  CLI::App* gen = nullptr;
  CLI::App* table = nullptr;

  Cli() {
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);

    bp = app.add_subcommand("bp", "Basis pursuit: min ||x||_1 s.t. Ax = b");
    add_common(bp, bp_c);
    bp->add_option("--lambda", bp_c.step_lambda, "LMM/PDHG dual weight");
    bp->add_option("--eps", bp_eps, "Must be 0 (equality constraint)")
        ->check(CLI::Range(0.0, 0.0));
    bp_src.add(bp);

    spcp = app.add_subcommand("spcp", "Stable principal component pursuit");
    add_common(spcp, spcp_c);
    spcp_src.add(spcp);

    emd = app.add_subcommand("emd", "Earth mover's distance on a grid");
    add_common(emd, emd_c);
    emd->add_option("--lambda", emd_c.step_lambda, "PDHG dual weight");
    emd_src.add(emd);

    smc = app.add_subcommand("smc", "Stable matrix completion");
    add_common(smc, smc_c);
    smc_src.add(smc);

    project = app.add_subcommand("project", "Project x onto ||Ax - b|| <= eps");
    project->add_option("--matrix", pr_matrix, "A (PPMAT1 or CSV)")->required();
    project->add_option("--b", pr_b, "b (PPVEC1)")->required();
    project->add_option("--x", pr_x, "x (PPVEC1)")->required();
    project->add_option("--eps", pr_eps, "Tolerance")
        ->check(CLI::NonNegativeNumber);
    project->add_option("--tau-tol", pr_tol, "Root solve tolerance");
    project->add_option("--out", pr_out, "Writes <out>.ppvec and <out>.manifest");
    project->add_option("--config", pr_config, "Flat key = value file");

    gen = app.add_subcommand("gen", "Write a generated problem to disk");
    gen->require_subcommand(1);
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--out", gen_out, "Output prefix");
    gen->add_option("--config", gen_config, "Flat key = value file");
    CLI::App* g_bp = gen->add_subcommand("bp", "A, b and the planted x*");
    CLI::App* g_spcp = gen->add_subcommand("spcp", "Observed M");
    CLI::App* g_emd = gen->add_subcommand("emd", "rho0 and rho1");
    CLI::App* g_smc = gen->add_subcommand("smc", "Observed M and the mask");
    gen_bp.add(g_bp);
    gen_spcp.add(g_spcp);
    gen_emd.add(g_emd);
    gen_smc.add(g_smc);
    for (CLI::App* s : {g_bp, g_spcp, g_emd, g_smc}) s->fallthrough();

    table = app.add_subcommand("table-smc", "Matrix completion comparison table");
    table->add_option("--n", tab.n, "Matrix size")->check(CLI::PositiveNumber);
    table->add_option("--rows", tab_rows, "Comma separated rank:oversample pairs");
    table->add_option("--seed", tab_seed, "First seed");
    table->add_option("--seeds", tab_seeds, "Number of seeds")
        ->check(CLI::PositiveNumber);
    table->add_option("--noise-ratio", tab.noise_ratio, "Target eps / ||P(M)||_F");
    table->add_option("--tol", tab.tol, "Relative update tolerance");
    table->add_option("--max-iters", tab.max_iters, "Iteration cap");
    table->add_option("--pp-alpha", tab.pp_alpha, "0 = size-scaled default");
    table->add_option("--vasalm-alpha", tab.vasalm_alpha, "0 = size-scaled default");
    table->add_option("--vasalm-eta", tab.vasalm_eta, "VASALM penalty growth");
    table->add_option("--spg-mu", tab.spg_mu, "0 = size-scaled default");
    table->add_option("--threads", tab.threads, "Worker threads, 0 = all cores");
    table->add_option("--out", tab_out, "Write <out>.csv and <out>.manifest");
    table->add_option("--config", tab_config, "Flat key = value file");
  }

  int dispatch(std::ostream& out, std::ostream& err) {
    if (bp->parsed()) return run_bp_cmd(out, err);
    if (spcp->parsed()) return run_spcp_cmd(out, err);
    if (emd->parsed()) return run_emd_cmd(out, err);
    if (smc->parsed()) return run_smc_cmd(out, err);
    if (project->parsed()) return run_project(out);
    if (gen->parsed()) return run_gen(out);
    return run_table(out);
  }

  int run_bp_cmd(std::ostream& out, std::ostream& err) {
    const auto method = pick_method(
        bp_c.method, "bp",
        {BaselineMethod::lb, BaselineMethod::lmm, BaselineMethod::pdhg});
    const BpInstance inst = bp_src.make(bp_c.seed);
    RunOutput r;
    r.method = bp_c.method;
    r.input_bytes = encode(inst.problem.a) + encode(inst.problem.b);
    if (!method) {
      r.log = run_bp(inst.problem, pp_config(bp_c, 0.1)).log;
    } else {
      auto res = run_bp_baseline(inst.problem, baseline_config(bp_c, *method));
      r.log = std::move(res.log);
      r.warnings = std::move(res.warnings);
    }
    emit(bp, bp_c, r, out, err);
    return kOk;
  }

  int run_spcp_cmd(std::ostream& out, std::ostream& err) {
    const auto method = pick_method(
        spcp_c.method, "spcp",
        {BaselineMethod::vasalm, BaselineMethod::pspg, BaselineMethod::pg});
    const SpcpProblem p = spcp_src.make(spcp_c.seed);
    RunOutput r;
    r.method = spcp_c.method;
    r.input_bytes = encode(p.m) + encode(Vector(Vector::Constant(1, p.eps)));
    if (!method) {
      r.log = run_spcp(p, pp_config(spcp_c)).log;
    } else {
      auto res = run_spcp_baseline(p, baseline_config(spcp_c, *method));
      r.log = std::move(res.log);
      r.warnings = std::move(res.warnings);
    }
    emit(spcp, spcp_c, r, out, err);
    return kOk;
  }

  int run_emd_cmd(std::ostream& out, std::ostream& err) {
    const auto method = pick_method(
        emd_c.method, "emd", {BaselineMethod::pdhg, BaselineMethod::gprox});
    const EmdProblem p = emd_src.make(emd_c.seed);
    RunOutput r;
    r.method = emd_c.method;
    r.input_bytes = encode(p.rho0) + encode(p.rho1);
    double distance = 0.0;
    if (!method) {
      auto res = run_emd(p, pp_config(emd_c, 1e-4));
      r.log = std::move(res.log);
      distance = res.distance;
    } else {
      auto res = run_emd_baseline(p, baseline_config(emd_c, *method));
      r.log = std::move(res.log);
      r.warnings = std::move(res.warnings);
      distance = res.distance;
    }
    r.extra.set("run.distance", distance);
    emit(emd, emd_c, r, out, err);
    return kOk;
  }

  int run_smc_cmd(std::ostream& out, std::ostream& err) {
    const auto method = pick_method(
        smc_c.method, "smc", {BaselineMethod::vasalm, BaselineMethod::spg});
    const SmcProblem p = smc_src.make(smc_c.seed);
    const SmcExperimentConfig d = smc_src.defaults(p.m_observed.rows());
    RunOutput r;
    r.method = smc_c.method;
    r.input_bytes = smc_bytes(p);
    if (!method) {
      SolverConfig s = pp_config(smc_c);
      if (!smc_c.alpha) s.alpha = d.resolved_pp_alpha();
      r.extra.set("run.alpha", s.alpha);
      r.log = run_smc(p, s).log;
    } else {
      BaselineConfig b = baseline_config(smc_c, *method);
      if (*method == BaselineMethod::vasalm) {
        if (!b.alpha) b.alpha = d.resolved_vasalm_alpha();
        if (!b.eta) b.eta = d.vasalm_eta;
        r.extra.set("run.alpha", *b.alpha);
      } else if (!b.mu) {
        b.mu = d.resolved_spg_mu();
        r.extra.set("run.mu", *b.mu);
      }
      auto res = run_smc_baseline(p, b);
      r.log = std::move(res.log);
      r.warnings = std::move(res.warnings);
    }
    emit(smc, smc_c, r, out, err);
    return kOk;
  }

  int run_project(std::ostream& out) {
    const Matrix a = load_matrix(pr_matrix);
    const Vector b = read_vector(pr_b);
    const Vector x = read_vector(pr_x);
    if (x.size() != a.cols()) {
      throw ShapeError("x has length " + std::to_string(x.size()) +
                       " but A has " + std::to_string(a.cols()) + " columns");
    }
    const ConstraintSpec spec(a, b, pr_eps);
    const ProjectionResult res = project_detailed(spec, x, pr_tol);
    const double achieved = spec.residual(res.u).norm();
    write_vector(pr_out + ".ppvec", res.u);
    RunManifest m;
    record_options(project, m);
    m.set("hash.input", git_blob_hash(encode(a) + encode(b) + encode(x)));
    m.set("hash.output", git_blob_hash(encode(res.u)));
    m.set("output.vector", pr_out + ".ppvec");
    m.set("run.residual", achieved);
    m.set("run.tau", res.tau);
    m.write(pr_out + ".manifest");
    out << "project " << pr_out << ".ppvec " << format_double(achieved) << ' '
        << format_double(res.tau) << '\n';
    return kOk;
  }

  int run_gen(std::ostream& out) {
    RunManifest m;
    record_options(gen, m);
    std::vector<std::pair<std::string, std::string>> files;
    auto add = [&](const std::string& suffix, std::string bytes) {
      files.emplace_back(gen_out + suffix, std::move(bytes));
    };
    CLI::App* which = gen->get_subcommands().front();
    record_options(which, m);
    m.set("run.app", which->get_name());
    if (which->get_name() == "bp") {
      const BpInstance inst = gen_bp.make(gen_seed);
      add(".A.ppmat", encode(inst.problem.a));
      add(".b.ppvec", encode(inst.problem.b));
      if (inst.planted.size() > 0) add(".xstar.ppvec", encode(inst.planted));
    } else if (which->get_name() == "spcp") {
      const SpcpProblem p = gen_spcp.make(gen_seed);
      add(".M.ppmat", encode(p.m));
      m.set("run.eps", p.eps);
      m.set("run.lambda", p.lambda);
    } else if (which->get_name() == "emd") {
      const EmdProblem p = gen_emd.make(gen_seed);
      add(".rho0.ppmat", encode(p.rho0));
      add(".rho1.ppmat", encode(p.rho1));
    } else {
      const SmcProblem p = gen_smc.make(gen_seed);
      Matrix w = Matrix::Zero(p.omega.rows(), p.omega.cols());
      for (const auto& [i, j] : p.omega.entries()) w(i, j) = 1.0;
      add(".M.ppmat", encode(mask_project(p.m_observed, p.omega)));
      add(".mask.ppmat", encode(w));
      m.set("run.eps", p.eps);
      m.set("run.scale", p.scale);
    }
    for (const auto& [path, bytes] : files) {
      write_file(path, bytes);
      m.set("hash." + path, git_blob_hash(bytes));
      out << path << '\n';
    }
    m.write(gen_out + ".manifest");
    return kOk;
  }

  int run_table(std::ostream& out) {
    std::vector<SmcTableSpec> rows;
    std::stringstream list(tab_rows);
    std::string s;
    while (std::getline(list, s, ',')) {
      const auto colon = s.find(':');
      if (colon == std::string::npos) {
        throw ConfigError("--rows entry '" + s + "' is not rank:oversample");
      }
      try {
        rows.push_back({std::stol(s.substr(0, colon)),
                        std::stod(s.substr(colon + 1))});
      } catch (const std::logic_error&) {
        throw ConfigError("--rows entry '" + s + "' is not rank:oversample");
      }
    }
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < tab_seeds; ++i) seeds.push_back(tab_seed + i);
    const auto t = table_smc(rows, seeds, tab);
    std::ostringstream csv;
    write_table_smc_csv(csv, t);
    out << csv.str();
    if (!tab_out.empty()) {
      write_file(tab_out + ".csv", csv.str());
      RunManifest m;
      record_options(table, m);
      m.set("hash.table", git_blob_hash(csv.str()));
      m.set("output.csv", tab_out + ".csv");
      m.write(tab_out + ".manifest");
    }
    return kOk;
  }
};

bool is_flag(const std::string& arg, const std::string& key) {
  const std::string f = "--" + key;
  return arg == f || arg.rfind(f + "=", 0) == 0;
}

}  // namespace

std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;
  RunManifest cfg;
  try {
    cfg = RunManifest::parse(read_file(path));
  } catch (const Error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  std::vector<std::string> extra;
  for (const auto& [key, value] : cfg.entries()) {
    if (key.find('.') != std::string::npos) continue;
    const bool given = std::any_of(args.begin(), args.end(),
                                   [&](const std::string& a) { return is_flag(a, key); });
    if (!given) extra.push_back("--" + key + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Cli cli;
  try {
    std::vector<std::string> full = expand_config(args);
    std::reverse(full.begin(), full.end());  // CLI11 consumes from the back
    cli.app.parse(full);
  } catch (const CLI::CallForHelp&) {
    out << cli.app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << cli.app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ppbench: " << e.what() << "\n" << "run 'ppbench --help' for usage\n";
    return kUsageError;
  } catch (const ConfigError& e) {
    err << "ppbench: " << e.what() << '\n';
    return kUsageError;
  }
  try {
    return cli.dispatch(out, err);
  } catch (const ConfigError& e) {
    err << "ppbench: configuration error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "ppbench: error: " << e.what() << '\n';
    return kSolverError;
  }
}

}  // namespace ppbench
