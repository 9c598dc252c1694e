#include "proxproj/emd.hpp"

#include <cmath>
#include <string>

namespace proxproj {

namespace {

constexpr double kTinyShift = 1e-14;
// Near the optimum z keeps sliding along the normal of the thin constraint
// tube by about 2*eps per step while m no longer moves.
constexpr double kZDriftFloor = 10.0;

}  // namespace

EmdOperator::EmdOperator(Index n, double h) : n_(n), h_(h) {
  if (n < 2) throw ShapeError("EmdOperator: grid size must be >= 2");
  if (!(h > 0.0)) throw ConfigError("EmdOperator: grid spacing must be > 0");
  k_ = Matrix::Zero(n, n - 1);
  for (Index j = 0; j < n - 1; ++j) {
    k_(j, j) = 1.0 / h;
    k_(j + 1, j) = -1.0 / h;
  }
  const Svd s = svd(k_, SvdMode::full_u);
  u_ = s.u;
  sigma_sq_ = Vector::Zero(n);
  const double cut = kSingularCutoff * s.sigma_max();
  for (Index i = 0; i < s.sigma.size(); ++i) {
    if (s.sigma(i) > cut) sigma_sq_(i) = s.sigma(i) * s.sigma(i);
  }
}

void EmdOperator::check_flux(const Matrix& m) const {
  if (m.rows() != 2 * (n_ - 1) || m.cols() != n_) {
    throw ShapeError("EMD: flux is " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()) + ", expected " +
                     std::to_string(2 * (n_ - 1)) + "x" + std::to_string(n_));
  }
}

Matrix EmdOperator::divergence(const Matrix& m) const {
  check_flux(m);
  return k_ * m.topRows(n_ - 1) + m.bottomRows(n_ - 1).transpose() *
                                      k_.transpose();
}

Matrix EmdOperator::adjoint(const Matrix& q) const {
  if (q.rows() != n_ || q.cols() != n_) {
    throw ShapeError("EMD adjoint: expected " + std::to_string(n_) + "x" +
                     std::to_string(n_) + " argument");
  }
  Matrix out(2 * (n_ - 1), n_);
  out.topRows(n_ - 1) = k_.transpose() * q;
  out.bottomRows(n_ - 1) = k_.transpose() * q.transpose();
  return out;
}

Matrix EmdOperator::project(const Matrix& z, const Matrix& rhs, double eps,
                            double tol, double* tau) const {
  if (tau != nullptr) *tau = 0.0;
  const Matrix r = divergence(z) + rhs;
  const double v = r.norm();
  if (v <= eps) return z;

  // In U coordinates AA^T acts entrywise: (AA^T q)~_ij = (s_i + s_j) q~_ij.
  const Matrix c = u_.transpose() * r * u_;
  const Index n = n_;
  Vector d(n * n);
  Vector cv(n * n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      d(j * n + i) = sigma_sq_(i) + sigma_sq_(j);
      cv(j * n + i) = c(i, j);
    }
  }
  const double dmax = norm_sq();
  Matrix y(n, n);
  if (eps * dmax / (v - eps) < kTinyShift * dmax) {
    // Affine projection, then slide back toward z so the violation is eps.
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        const double dij = d(j * n + i);
        y(i, j) = dij > 0.0 ? c(i, j) / dij : 0.0;
      }
    }
    const Matrix u0 = z - adjoint(u_ * y * u_.transpose());
    return u0 + (eps / v) * (z - u0);
  }
  const TauBracket br = solve_tau_spectral(d, cv, dmax, v, eps, tol);
  const double shift = eps * br.root;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double den = d(j * n + i) + shift;
      y(i, j) = den > 0.0 ? c(i, j) / den : 0.0;
    }
  }
  if (tau != nullptr) *tau = br.root;
  return z - adjoint(u_ * y * u_.transpose());
}

EmdProblem EmdProblem::create(Matrix rho0, Matrix rho1, double eps, double h,
                              bool normalize) {
  if (rho0.rows() != rho0.cols() || rho1.rows() != rho0.rows() ||
      rho1.cols() != rho0.cols()) {
    throw ShapeError("EMD: densities must be square and of equal size");
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw IllPosedError("EMD: eps must be positive (the divergence is rank "
                        "deficient)");
  }
  if (!all_finite(rho0) || !all_finite(rho1)) {
    throw IllPosedError("EMD: non-finite density entries");
  }
  if (rho0.minCoeff() < 0.0 || rho1.minCoeff() < 0.0) {
    throw IllPosedError("EMD: densities must be nonnegative");
  }
  const double s0 = rho0.sum();
  const double s1 = rho1.sum();
  if (!(s0 > 0.0) || !(s1 > 0.0)) {
    throw IllPosedError("EMD: density has zero total mass");
  }
  if (normalize) {
    rho0 /= s0;
    rho1 /= s1;
  } else if (std::abs(s0 - s1) > 1e-12 * std::max(s0, s1)) {
    throw IllPosedError("EMD: total masses differ (" + std::to_string(s0) +
                        " vs " + std::to_string(s1) + ")");
  }
  EmdProblem p;
  p.op = std::make_shared<const EmdOperator>(rho0.rows(), h);
  p.rho0 = std::move(rho0);
  p.rho1 = std::move(rho1);
  p.h = h;
  p.eps = eps;
  return p;
}

double emd_violation(const EmdProblem& p, const Matrix& m) {
  return (p.op->divergence(m) + p.rhs()).norm();
}

double emd_objective(const Matrix& m) { return m.cwiseAbs().sum(); }

EmdResult run_emd(const EmdProblem& p, const SolverConfig& cfg) {
  cfg.validate();
  const EmdOperator& op = *p.op;
  const Matrix rhs = p.rhs();
  const Index n = p.n();
  Matrix z = Matrix::Zero(2 * (n - 1), n);
  Matrix m;
  Matrix prev;
  IterationRecorder rec(cfg.max_iters, cfg.log_every);
  bool converged = false;
  for (long k = 1; k <= cfg.max_iters; ++k) {
    rec.begin();
    m = op.project(z, rhs, p.eps, cfg.tau_tol);
    const Matrix dz = shrink(2.0 * m - z, cfg.alpha) - m;
    z += dz;
    double residual = std::numeric_limits<double>::infinity();
    if (k > 1) {
      residual = (m - prev).norm();
      converged = residual_converged(residual, cfg.residual_tol,
                                     std::max(1.0, prev.norm())) &&
                  dz.norm() <= cfg.residual_tol * std::max(1.0, z.norm()) +
                                   kZDriftFloor * p.eps;
    }
    const bool last = converged || k == cfg.max_iters;
    rec.record(k, emd_violation(p, m), residual, last,
               [&] { return emd_objective(m); });
    if (last) break;
    prev = m;
  }
  EmdResult out{rec.finish(converged), m, p.h * emd_objective(m)};
  return out;
}

Matrix emd_dense_operator(const EmdOperator& op) {
  const Index n = op.n();
  const Index rows = 2 * (n - 1);
  Matrix a(n * n, rows * n);
  Matrix unit = Matrix::Zero(rows, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < rows; ++i) {
      unit(i, j) = 1.0;
      const Matrix d = op.divergence(unit);
      a.col(j * rows + i) = Eigen::Map<const Vector>(d.data(), d.size());
      unit(i, j) = 0.0;
    }
  }
  return a;
}

}  // namespace proxproj
