#include <cmath>
#include <sstream>

#include "proxproj/baselines.hpp"

namespace proxproj {

std::string to_string(BaselineMethod m) {
  switch (m) {
    case BaselineMethod::lb: return "lb";
    case BaselineMethod::lmm: return "lmm";
    case BaselineMethod::pdhg: return "pdhg";
    case BaselineMethod::vasalm: return "vasalm";
    case BaselineMethod::pspg: return "pspg";
    case BaselineMethod::pg: return "pg";
    case BaselineMethod::gprox: return "gprox";
    case BaselineMethod::spg: return "spg";
  }
  return "unknown";
}

BaselineMethod parse_baseline(const std::string& name) {
  for (BaselineMethod m :
       {BaselineMethod::lb, BaselineMethod::lmm, BaselineMethod::pdhg,
        BaselineMethod::vasalm, BaselineMethod::pspg, BaselineMethod::pg,
        BaselineMethod::gprox, BaselineMethod::spg}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown baseline method '" + name + "'");
}

void BaselineConfig::validate() const {
  if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
  if (log_every < 1) throw ConfigError("log_every must be >= 1");
  if (!(residual_tol >= 0.0)) throw ConfigError("residual_tol must be >= 0");
  if (!(root_tol > 0.0)) throw ConfigError("root_tol must be > 0");
  const std::pair<const char*, const std::optional<double>*> positive[] = {
      {"alpha", &alpha}, {"lambda", &lambda}, {"mu", &mu},
      {"eta", &eta},     {"sigma", &sigma},   {"tau", &tau}};
  for (const auto& [name, v] : positive) {
    if (v->has_value() && !(**v > 0.0 && std::isfinite(**v))) {
      throw ConfigError(std::string(name) + " must be positive and finite");
    }
  }
}

namespace detail {

void check_strict_upper(const std::string& what, double value, double bound,
                        std::vector<std::string>& warnings) {
  if (value < bound) return;
  std::ostringstream msg;
  msg.precision(17);
  msg << what << " = " << value << " vs bound " << bound;
  if (value <= bound * (1.0 + 1e-12)) {
    warnings.push_back(msg.str() +
                       " sits on the boundary of the convergence condition");
    return;
  }
  throw ConfigError(msg.str() + " violates the convergence condition");
}

}  // namespace detail

}  // namespace proxproj
