#pragma once

#include <string>
#include <variant>

#include "proxproj/bp.hpp"
#include "proxproj/emd.hpp"
#include "proxproj/smc.hpp"
#include "proxproj/spcp.hpp"

namespace proxproj {

using ProblemInstance =
    std::variant<BpProblem, SpcpProblem, EmdProblem, SmcProblem>;

/// "bp", "spcp", "emd" or "smc".
std::string application_name(const ProblemInstance& p);

/// Runs the PP solver matching the problem type.
IterateLog run_pp(const ProblemInstance& problem, const SolverConfig& cfg);

}  // namespace proxproj
