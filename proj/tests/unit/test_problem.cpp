#include <doctest.h>

#include "proxproj/generators.hpp"
#include "proxproj/problem.hpp"

using namespace proxproj;

TEST_CASE("application names") {
  CHECK(application_name(BpProblem{}) == "bp");
  CHECK(application_name(SpcpProblem{}) == "spcp");
  CHECK(application_name(EmdProblem{}) == "emd");
  CHECK(application_name(SmcProblem{}) == "smc");
}

TEST_CASE("dispatch matches the direct solvers") {
  SolverConfig cfg;
  cfg.max_iters = 30;
  cfg.residual_tol = 0.0;

  const BpInstance bp = gen_bp(6, 15, 0.3, 1);
  const IterateLog a = run_pp(ProblemInstance{bp.problem}, cfg);
  CHECK(a.last().objective == run_bp(bp.problem, cfg).log.last().objective);

  const SpcpInstance sp = gen_spcp(8, 6, 1, 0.1, 0.01, 2);
  const IterateLog b = run_pp(ProblemInstance{sp.problem}, cfg);
  CHECK(b.last().objective == run_spcp(sp.problem, cfg).log.last().objective);

  EmdPairParams params;
  params.points = std::array<Index, 4>{0, 0, 2, 2};
  const EmdProblem em = gen_emd_pair(EmdPairKind::point_masses, 4, params, 0);
  const IterateLog c = run_pp(ProblemInstance{em}, cfg);
  CHECK(c.last().objective == run_emd(em, cfg).log.last().objective);

  const SmcInstance sm = gen_smc(8, 1, 3.0, 0.01, 3);
  const IterateLog d = run_pp(ProblemInstance{sm.problem}, cfg);
  CHECK(d.last().objective == run_smc(sm.problem, cfg).log.last().objective);
  CHECK(d.iterations == 30);
}
