#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "proxproj/experiments.hpp"

using namespace proxproj;

TEST_CASE("median") {
  CHECK(median({}) == 0.0);
  CHECK(median({3.0}) == 3.0);
  CHECK(median({5.0, 1.0, 3.0}) == 3.0);
  CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
}

TEST_CASE("fan_out keeps results in job order") {
  const std::function<std::size_t(std::size_t)> job = [](std::size_t i) {
    if (i % 3 == 0) std::this_thread::yield();
    return i * i;
  };
  for (unsigned threads : {0u, 1u, 4u, 64u}) {
    const std::vector<std::size_t> out = fan_out<std::size_t>(50, threads, job);
    REQUIRE(out.size() == 50);
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == i * i);
  }
  CHECK(fan_out<int>(0, 4, [](std::size_t) { return 1; }).empty());
}

TEST_CASE("fan_out rethrows a job failure") {
  const std::function<int(std::size_t)> job = [](std::size_t i) -> int {
    if (i == 7) throw std::runtime_error("job 7");
    return 0;
  };
  CHECK_THROWS_WITH_AS(fan_out<int>(20, 4, job), "job 7", std::runtime_error);
}

TEST_CASE("parameter rescaling with n") {
  SmcExperimentConfig cfg;
  cfg.n = 200;
  CHECK(cfg.resolved_pp_alpha() == doctest::Approx(10.0));
  CHECK(cfg.resolved_spg_mu() == doctest::Approx(2.0));
  CHECK(cfg.resolved_vasalm_alpha() == doctest::Approx(0.05));
  cfg.pp_alpha = 3.0;
  CHECK(cfg.resolved_pp_alpha() == 3.0);
}

TEST_CASE("a tiny table has one fully populated row") {
  SmcExperimentConfig cfg;
  cfg.n = 20;
  cfg.max_iters = 300;
  cfg.threads = 2;
  const std::vector<SmcTableRow> t = table_smc({{2, 3.0}}, {1, 2, 3}, cfg);
  REQUIRE(t.size() == 1);
  const SmcTableRow& row = t[0];
  CHECK(row.rank == 2);
  CHECK(row.s_over_n2 == doctest::Approx(228.0 / 400.0));
  for (const SmcMethodSummary* m : {&row.pp, &row.vasalm, &row.spg}) {
    CHECK(m->runs.size() == 3);
    CHECK(m->median_iterations() >= 1.0);
    CHECK(m->median_objective() > 0.0);
  }
  CHECK(row.pp.median_violation() <= 1e-12);

  // Thread count does not change the numbers.
  cfg.threads = 1;
  const std::vector<SmcTableRow> serial = table_smc({{2, 3.0}}, {1, 2, 3}, cfg);
  CHECK(serial[0].pp.median_objective() == row.pp.median_objective());
  CHECK(serial[0].spg.median_iterations() == row.spg.median_iterations());

  std::ostringstream os;
  write_table_smc_csv(os, t);
  const std::string csv = os.str();
  CHECK(csv.rfind("rank,s_over_dr,s_over_n2,pp_iters,pp_viol,pp_objective,"
                  "vasalm_iters,vasalm_viol,vasalm_objective,spg_iters,"
                  "spg_viol,spg_objective\n2,3,",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}
