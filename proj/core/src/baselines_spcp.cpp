#include <algorithm>
#include <cmath>

#include "proxproj/baselines.hpp"

namespace proxproj {

namespace {

double pspg_phi(const Matrix& d, double lambda, double mu, double theta) {
  const double cap = lambda / theta;
  const double div = 1.0 + mu * theta;
  double acc = 0.0;
  for (Index j = 0; j < d.cols(); ++j) {
    for (Index i = 0; i < d.rows(); ++i) {
      const double t = std::min(cap, std::abs(d(i, j)) / div);
      acc += t * t;
    }
  }
  return std::sqrt(acc);
}

}  // namespace

double pspg_theta(const Matrix& d, double lambda, double mu, double eps,
                  double hint, double tol) {
  if (!(eps > 0.0)) throw ConfigError("PSPG needs eps > 0");
  if (d.norm() <= eps) return 0.0;
  // phi decreases from ||d||_F at theta = 0 toward 0.
  double hi = hint > 0.0 && std::isfinite(hint) ? hint : 1.0;
  double lo = 0.0;
  int grow = 0;
  while (pspg_phi(d, lambda, mu, hi) > eps) {
    lo = hi;
    hi *= 4.0;
    if (++grow > 200 || !std::isfinite(hi)) {
      throw ConvergenceError("PSPG: no bracket for theta", hi);
    }
  }
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double phi = pspg_phi(d, lambda, mu, mid);
    if (std::abs(phi - eps) <= tol * eps) return mid;
    if (phi > eps) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  // Upper end keeps phi <= eps, i.e. the iterate on the feasible side.
  return hi;
}

SpcpBaselineResult run_spcp_baseline(const SpcpProblem& p,
                                     const BaselineConfig& cfg) {
  p.validate();
  cfg.validate();
  const Matrix& m = p.m;
  const double scale = spcp_scale(p);
  const double lambda = p.lambda;
  SpcpBaselineResult out;

  double alpha = 0.0;
  double eta = 0.0;
  double mu = 0.0;
  switch (cfg.method) {
    case BaselineMethod::vasalm:
      alpha = cfg.alpha.value_or(1e-5);
      eta = cfg.eta.value_or(3.0);
      if (!(eta > 2.0)) throw ConfigError("VASALM needs eta > 2");
      break;
    case BaselineMethod::pspg: {
      if (!(p.eps > 0.0)) throw ConfigError("PSPG needs eps > 0");
      const double ref =
          cfg.reference_objective.value_or(spcp_objective(p, m, m * 0.0));
      mu = cfg.mu.value_or(0.1 * ref /
                           static_cast<double>(std::min(m.rows(), m.cols())));
      if (!(mu > 0.0)) throw ConfigError("PSPG smoothing mu must be > 0");
      break;
    }
    case BaselineMethod::pg:
      mu = cfg.mu.value_or(1.0);
      alpha = cfg.alpha.value_or(mu);
      detail::check_strict_upper("PG alpha/mu", alpha / mu, 2.0, out.warnings);
      break;
    default:
      throw ConfigError("method '" + to_string(cfg.method) +
                        "' is not an SPCP baseline");
  }

  Matrix xl = m;
  Matrix xs = Matrix::Zero(m.rows(), m.cols());
  Matrix lam = Matrix::Zero(m.rows(), m.cols());
  const double n1n2 = static_cast<double>(m.size());
  IterationRecorder rec(cfg.max_iters, cfg.log_every);
  bool converged = false;
  for (long k = 1; k <= cfg.max_iters; ++k) {
    rec.begin();
    const Matrix lam_prev = lam;
    Matrix nl;
    Matrix ns;
    switch (cfg.method) {
      case BaselineMethod::vasalm: {
        const Matrix nn = ball_project(Matrix(lam / alpha + m - xl - xs),
                                       Matrix(Matrix::Zero(m.rows(), m.cols())),
                                       p.eps);
        const Matrix lhat = lam - alpha * (xl + xs + nn - m);
        const double step = 1.0 / (alpha * eta);
        ns = shrink(xs + step * lhat, lambda * step);
        nl = svt(xl + step * lhat, step);
        lam = lhat + alpha * (xl - nl) + alpha * (xs - ns);
        break;
      }
      case BaselineMethod::pspg: {
        const Matrix sv = svt(xl, mu);
        const Matrix d = m - sv;
        const double hint = std::min(
            n1n2 * lambda * p.eps, std::abs((d.norm() - p.eps) / (mu * p.eps)));
        const double theta = pspg_theta(d, lambda, mu, p.eps, hint, cfg.root_tol);
        if (theta == 0.0) {
          ns = Matrix::Zero(m.rows(), m.cols());
          nl = sv;
        } else {
          const double mt = mu * theta;
          ns = shrink(d, lambda * (1.0 + mt) / theta);
          nl = (mt * (m - ns) + sv) / (1.0 + mt);
        }
        break;
      }
      default: {  // pg
        const Matrix r = xl + xs - m;
        nl = svt(xl - (alpha / mu) * r, alpha);
        ns = shrink(xs - (alpha / mu) * r, alpha * lambda);
        break;
      }
    }
    double residual = std::numeric_limits<double>::infinity();
    if (k > 1) {
      residual = std::sqrt((nl - xl).squaredNorm() + (ns - xs).squaredNorm()) /
                 scale;
      // VASALM can sit at (0, 0) while the multiplier grows.
      converged = residual_converged(residual, cfg.residual_tol, 1.0) &&
                  residual_converged((lam - lam_prev).norm() / scale,
                                     cfg.residual_tol, 1.0);
    }
    xl = std::move(nl);
    xs = std::move(ns);
    const bool last = converged || k == cfg.max_iters;
    rec.record(k, spcp_violation(p, xl, xs), residual, last,
               [&] { return spcp_objective(p, xl, xs); });
    if (last) break;
  }
  out.log = rec.finish(converged);
  out.l = std::move(xl);
  out.s = std::move(xs);
  return out;
}

}  // namespace proxproj
