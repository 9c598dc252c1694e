#include "proxproj/problem.hpp"

namespace proxproj {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string application_name(const ProblemInstance& p) {
  return std::visit(Overloaded{
                        [](const BpProblem&) { return std::string("bp"); },
                        [](const SpcpProblem&) { return std::string("spcp"); },
                        [](const EmdProblem&) { return std::string("emd"); },
                        [](const SmcProblem&) { return std::string("smc"); },
                    },
                    p);
}

IterateLog run_pp(const ProblemInstance& problem, const SolverConfig& cfg) {
  return std::visit(
      Overloaded{
          [&](const BpProblem& p) { return run_bp(p, cfg).log; },
          [&](const SpcpProblem& p) { return run_spcp(p, cfg).log; },
          [&](const EmdProblem& p) { return run_emd(p, cfg).log; },
          [&](const SmcProblem& p) { return run_smc(p, cfg).log; },
      },
      problem);
}

}  // namespace proxproj
