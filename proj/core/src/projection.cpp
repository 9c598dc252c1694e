#include "proxproj/projection.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace proxproj {

namespace {

// Relative tolerance for the image-of-A test on b.
constexpr double kImageTol = 1e-8;
// Full row rank surrogate when eps == 0.
constexpr double kRankTol = 1e-10;
// Below this eps*hi/sigma_1^2 the eps*tau shift is lost in rounding.
constexpr double kTinyShift = 1e-14;

Index active_count(const Svd& s) {
  const double cut = kSingularCutoff * s.sigma_max();
  Index k = 0;
  while (k < s.sigma.size() && s.sigma(k) > cut) ++k;
  return k;
}

// g(tau)^2 and its derivative in tau over the spectral weights s2.
void g2_and_slope(const Vector& s2, const Vector& c, double eps, double tau,
                  double& g2, double& dg2) {
  g2 = 0.0;
  dg2 = 0.0;
  for (Index i = 0; i < s2.size(); ++i) {
    const double si = s2(i);
    const double den = si + eps * tau;
    if (den == 0.0) continue;
    const double w = tau / den;
    const double ci2 = c(i) * c(i);
    g2 += w * w * ci2;
    dg2 += 2.0 * w * ci2 * si / (den * den);
  }
}

void check_shape(const ConstraintSpec& spec, const Vector& x) {
  if (x.size() != spec.cols()) {
    throw ShapeError("project: x has length " + std::to_string(x.size()) +
                     ", constraint matrix has " + std::to_string(spec.cols()) +
                     " columns");
  }
}

// Affine projection in SVD coordinates: x - V diag(1/sigma) c.
Vector affine_point(const Svd& s, const Vector& x, const Vector& c, Index k) {
  Vector coef = c.head(k).cwiseQuotient(s.sigma.head(k));
  return x - s.v.leftCols(k) * coef;
}

}  // namespace

ConstraintSpec::ConstraintSpec(Matrix a, Vector b, double eps,
                               ProjectionPath path)
    : a_(std::move(a)), b_(std::move(b)), eps_(eps), path_(path) {
  if (a_.rows() != b_.size()) {
    throw ShapeError("ConstraintSpec: A has " + std::to_string(a_.rows()) +
                     " rows but b has length " + std::to_string(b_.size()));
  }
  if (!(eps_ >= 0.0) || !std::isfinite(eps_)) {
    throw IllPosedError("ConstraintSpec: eps must be finite and >= 0, got " +
                        std::to_string(eps_));
  }
  if (!all_finite(a_) || !b_.allFinite()) {
    throw IllPosedError("ConstraintSpec: non-finite entries in A or b");
  }
  svd_ = std::make_shared<const Svd>(proxproj::svd(a_));
  const Svd& s = *svd_;
  const Index k = active_count(s);
  if (eps_ == 0.0) {
    const Index m = a_.rows();
    const bool full_rank = s.sigma.size() >= m && m > 0 &&
                           s.sigma(m - 1) > kRankTol * s.sigma_max();
    if (!full_rank) {
      throw IllPosedError(
          "ConstraintSpec: eps = 0 requires A to have full row rank");
    }
    gram_ = std::make_shared<const SpdFactor>(a_ * a_.transpose());
  }
  const Vector proj_b = s.u.leftCols(k) * (s.u.leftCols(k).transpose() * b_);
  if ((b_ - proj_b).norm() > kImageTol * (1.0 + b_.norm())) {
    throw IllPosedError("ConstraintSpec: b is not in the image of A");
  }
}

Vector ConstraintSpec::residual(const Vector& x) const {
  if (x.size() != cols()) {
    throw ShapeError("ConstraintSpec::residual: length mismatch");
  }
  return a_ * x - b_;
}

double tau_function(const Svd& s, const Vector& c, double eps, double tau) {
  const Index k = active_count(s);
  const Vector s2 = s.sigma.head(k).cwiseAbs2();
  double g2 = 0.0;
  double dg2 = 0.0;
  g2_and_slope(s2, c.head(k), eps, tau, g2, dg2);
  return std::sqrt(g2);
}

TauBracket solve_tau(const Svd& s, const Vector& r, double eps, double tol,
                     int max_iter) {
  const Index k = active_count(s);
  const Vector c = s.u.leftCols(k).transpose() * r;
  const double s1 = s.sigma_max();
  return solve_tau_spectral(s.sigma.head(k).cwiseAbs2(), c, s1 * s1, r.norm(),
                            eps, tol, max_iter);
}

TauBracket solve_tau_spectral(const Vector& s2, const Vector& c, double s2max,
                              double rnorm, double eps, double tol,
                              int max_iter) {
  if (!(rnorm > eps)) {
    throw ConfigError("solve_tau: called on a feasible residual");
  }
  if (s2.size() != c.size()) throw ShapeError("solve_tau: weight length");
  TauBracket br;
  br.hi = s2max / (rnorm - eps);
  const double bound = br.hi;
  if (!std::isfinite(br.hi) || !c.allFinite()) {
    throw IllConditionedError("solve_tau: non-finite bracket");
  }

  if (eps == 0.0) {
    // g is linear in tau: g(tau) = tau * ||c / s2||.
    double acc = 0.0;
    for (Index i = 0; i < s2.size(); ++i) {
      if (s2(i) > 0.0) acc += (c(i) / s2(i)) * (c(i) / s2(i));
    }
    br.root = 1.0 / std::sqrt(acc);
    br.lo = br.root;
    if (!std::isfinite(br.root)) {
      throw IllConditionedError("solve_tau: non-finite closed-form root");
    }
    return br;
  }

  double g2 = 0.0;
  double dg2 = 0.0;
  g2_and_slope(s2, c, eps, br.hi, g2, dg2);
  if (!std::isfinite(g2)) {
    throw IllConditionedError("solve_tau: g(hi) is not finite");
  }
  // Rounding can leave g(hi) a hair under 1; widen slightly in that case.
  for (int grow = 0; g2 < 1.0 && grow < 8; ++grow) {
    br.hi *= 1.0 + 1e-8 * (1 << grow);
    g2_and_slope(s2, c, eps, br.hi, g2, dg2);
  }
  if (g2 < 1.0) {
    // The bound is attained when A has one row; accept it within tol.
    if (1.0 - std::sqrt(g2) <= tol) {
      br.root = bound;
      br.lo = bound;
      br.hi = bound;
      return br;
    }
    throw IllConditionedError("solve_tau: bracket does not enclose the root");
  }

  double lo = 0.0;
  double hi = br.hi;
  double tau = 0.5 * hi;
  double best = tau;
  double best_err = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= max_iter; ++it) {
    g2_and_slope(s2, c, eps, tau, g2, dg2);
    if (!std::isfinite(g2) || !std::isfinite(dg2)) {
      throw IllConditionedError("solve_tau: non-finite g at tau = " +
                                std::to_string(tau));
    }
    const double err = std::abs(std::sqrt(g2) - 1.0);
    if (err < best_err) {
      best_err = err;
      best = tau;
    }
    br.iterations = it;
    if (err <= tol) {
      br.root = tau;
      br.lo = lo;
      br.hi = hi;
      return br;
    }
    if (g2 < 1.0) {
      lo = tau;
    } else {
      hi = tau;
    }
    double next = tau - (g2 - 1.0) / dg2;
    if (!(next > lo && next < hi) || !(dg2 > 0.0)) next = 0.5 * (lo + hi);
    if (next == tau ||
        hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi) {
      // Bracket collapsed to adjacent doubles; this is as good as it gets.
      br.root = best;
      br.lo = lo;
      br.hi = hi;
      return br;
    }
    tau = next;
  }
  throw ConvergenceError("solve_tau: tolerance " + std::to_string(tol) +
                             " not reached in " + std::to_string(max_iter) +
                             " iterations",
                         best);
}

ProjectionResult project_detailed(const ConstraintSpec& spec, const Vector& x,
                                  double tol) {
  check_shape(spec, x);
  const Vector r = spec.residual(x);
  const double rn = r.norm();
  const double eps = spec.eps();
  if (rn <= eps) return {x, false, 0.0};

  const Svd& s = spec.svd();
  const Index k = active_count(s);

  if (eps == 0.0) {
    const TauBracket br = solve_tau(s, r, eps, tol);
    if (spec.path() == ProjectionPath::spd) {
      return {project_eps_zero(spec, x), true, br.root};
    }
    const Vector c = s.u.leftCols(k).transpose() * r;
    return {affine_point(s, x, c, k), true, br.root};
  }

  const double s1sq = s.sigma_max() * s.sigma_max();
  const double hi = s1sq / (rn - eps);
  const Vector c = s.u.leftCols(k).transpose() * r;
  // With A of full row rank, a point within rounding of the boundary can
  // still have ||U^T r|| <= eps, and then tau has no finite root.
  const bool on_boundary = k == spec.rows() && c.norm() <= eps;
  if (eps * hi < kTinyShift * s1sq || on_boundary) {
    // Affine projection, then slide back toward x so ||Au - b|| = eps.
    const Vector u0 = affine_point(s, x, c, k);
    const double t = eps / rn;
    return {u0 + t * (x - u0), true, 0.0};
  }

  const TauBracket br = solve_tau(s, r, eps, tol);
  const double shift = eps * br.root;
  if (spec.path() == ProjectionPath::spd) {
    Matrix g = spec.a() * spec.a().transpose();
    g.diagonal().array() += shift;
    const Vector y = SpdFactor(g).solve(r);
    return {x - spec.a().transpose() * y, true, br.root};
  }
  Vector coef(k);
  for (Index i = 0; i < k; ++i) {
    const double si = s.sigma(i);
    coef(i) = si / (si * si + shift) * c(i);
  }
  return {x - s.v.leftCols(k) * coef, true, br.root};
}

Vector project(const ConstraintSpec& spec, const Vector& x, double tol) {
  return project_detailed(spec, x, tol).u;
}

Vector project_eps_zero(const ConstraintSpec& spec, const Vector& x) {
  check_shape(spec, x);
  if (spec.gram() == nullptr) {
    throw ConfigError(
        "project_eps_zero: no cached AA^T factor (constraint has eps > 0)");
  }
  const Vector r = spec.residual(x);
  return x - spec.a().transpose() * spec.gram()->solve(r);
}

}  // namespace proxproj
