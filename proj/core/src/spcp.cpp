#include "proxproj/spcp.hpp"

#include <cmath>
#include <string>

namespace proxproj {

double SpcpProblem::default_lambda(Index rows) {
  if (rows < 1) throw ShapeError("SpcpProblem: empty matrix");
  return 1.0 / std::sqrt(static_cast<double>(rows));
}

void SpcpProblem::validate() const {
  if (!(lambda > 0.0)) {
    throw ConfigError("SPCP: lambda must be > 0, got " + std::to_string(lambda));
  }
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw ConfigError("SPCP: eps must be finite and >= 0");
  }
  if (m.size() == 0) throw ShapeError("SPCP: empty data matrix");
}

SpcpPair spcp_project(const Matrix& zl, const Matrix& zs, const Matrix& m,
                      double eps) {
  if (zl.rows() != m.rows() || zl.cols() != m.cols() ||
      zs.rows() != m.rows() || zs.cols() != m.cols()) {
    throw ShapeError("spcp_project: block shapes differ from M");
  }
  const Matrix r = zl + zs - m;
  const double rn = r.norm();
  // rn = 0 gives -eps/0 = -inf, so mu = 0.
  if (rn <= eps || rn == 0.0) return {zl, zs};
  const double mu = (rn - eps) / (2.0 * rn);
  return {zl - mu * r, zs - mu * r};
}

double spcp_violation(const SpcpProblem& p, const Matrix& l, const Matrix& s) {
  const double gap = (l + s - p.m).norm();
  if (p.eps == 0.0) return gap;
  return std::max(gap - p.eps, 0.0) / p.eps;
}

double spcp_objective(const SpcpProblem& p, const Matrix& l, const Matrix& s) {
  return nuclear_norm(l) + p.lambda * s.lpNorm<1>();
}

double spcp_scale(const SpcpProblem& p) {
  const double n = p.m.norm();
  return n > 0.0 ? n : 1.0;
}

SpcpState SpcpState::initial(const SpcpProblem& p) {
  const Matrix zero = Matrix::Zero(p.m.rows(), p.m.cols());
  return {p.m, zero, p.m, zero};
}

void spcp_step(SpcpState& st, const SpcpProblem& p, double alpha) {
  st.zl += svt(2.0 * st.xl - st.zl, alpha) - st.xl;
  st.zs += shrink(2.0 * st.xs - st.zs, alpha * p.lambda) - st.xs;
  SpcpPair x = spcp_project(st.zl, st.zs, p.m, p.eps);
  st.xl = std::move(x.l);
  st.xs = std::move(x.s);
}

SpcpResult run_spcp(const SpcpProblem& p, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  const double scale = spcp_scale(p);
  SpcpState st = SpcpState::initial(p);
  IterationRecorder rec(cfg.max_iters, cfg.log_every);
  bool converged = false;
  for (long k = 1; k <= cfg.max_iters; ++k) {
    rec.begin();
    const Matrix prev_l = st.xl;
    const Matrix prev_s = st.xs;
    const Matrix prev_zl = st.zl;
    const Matrix prev_zs = st.zs;
    spcp_step(st, p, cfg.alpha);
    double residual = std::numeric_limits<double>::infinity();
    if (k > 1) {
      const double dl = (st.xl - prev_l).squaredNorm();
      const double ds = (st.xs - prev_s).squaredNorm();
      residual = std::sqrt(dl + ds) / scale;
      const double dz = std::sqrt((st.zl - prev_zl).squaredNorm() +
                                  (st.zs - prev_zs).squaredNorm()) /
                        scale;
      converged = residual_converged(residual, cfg.residual_tol, 1.0) &&
                  residual_converged(dz, cfg.residual_tol, 1.0);
    }
    const bool last = converged || k == cfg.max_iters;
    rec.record(k, spcp_violation(p, st.xl, st.xs), residual, last,
               [&] { return spcp_objective(p, st.xl, st.xs); });
    if (last) break;
  }
  return {rec.finish(converged), std::move(st.xl), std::move(st.xs)};
}

}  // namespace proxproj
