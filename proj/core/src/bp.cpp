#include "proxproj/bp.hpp"

namespace proxproj {

double bp_violation(const BpProblem& p, const Vector& x) {
  return (p.a * x - p.b).norm();
}

double bp_objective(const Vector& x) { return x.lpNorm<1>(); }

BpResult run_bp(const BpProblem& p, const SolverConfig& cfg, const Vector* z0) {
  const ConstraintSpec spec(p.a, p.b, 0.0, ProjectionPath::spd);
  const Vector start = z0 != nullptr ? *z0 : Vector::Zero(p.a.cols());
  PpResult r = run_pp(spec, l1_prox(), bp_objective, cfg, start);
  return {std::move(r.log), std::move(r.x)};
}

}  // namespace proxproj
