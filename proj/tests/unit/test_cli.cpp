#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "proxproj/io.hpp"
#include "proxproj/manifest.hpp"
#include "proxproj/projection.hpp"

using namespace proxproj;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = ppbench::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "proxproj_test_cli";
  fs::create_directories(dir);
  return (dir / name).string();
}

long line_count(const std::string& text) {
  return std::count(text.begin(), text.end(), '\n');
}

}  // namespace

TEST_CASE("a ten-iteration BP run writes ten rows and a manifest") {
  const std::string out = scratch("run1");
  const Outcome r = cli({"bp", "--method", "pp", "--seed", "1", "--max-iters",
                         "10", "--out", out});
  REQUIRE(r.code == 0);
  const std::string csv = read_file(out + ".csv");
  CHECK(line_count(csv) == 11);
  CHECK(csv.rfind("iter,violation,objective,residual,wall_ms\n", 0) == 0);
  CHECK(r.out.rfind("pp 10 ", 0) == 0);

  const RunManifest m = RunManifest::parse(read_file(out + ".manifest"));
  CHECK(m.get("run.app") == "bp");
  CHECK(m.get("seed") == "1");
  CHECK(m.get("method") == "pp");
  CHECK(m.get("output.csv") == out + ".csv");
  CHECK(m.get("hash.input").size() == 40);
  CHECK(m.get("hash.metrics").size() == 40);
}

TEST_CASE("a manifest reproduces its run") {
  const std::string first = scratch("orig");
  REQUIRE(cli({"spcp", "--method", "vasalm", "--n1", "12", "--n2", "9",
               "--max-iters", "40", "--alpha", "0.5", "--seed", "4", "--out",
               first})
              .code == 0);
  const std::string again = scratch("again");
  REQUIRE(cli({"spcp", "--config", first + ".manifest", "--out", again}).code ==
          0);
  const RunManifest a = RunManifest::parse(read_file(first + ".manifest"));
  const RunManifest b = RunManifest::parse(read_file(again + ".manifest"));
  CHECK(a.get("hash.metrics") == b.get("hash.metrics"));
  CHECK(a.get("hash.input") == b.get("hash.input"));
  CHECK(b.get("alpha") == "0.5");
}

TEST_CASE("flags override config values") {
  const std::string cfg = scratch("override.cfg");
  write_file(cfg, "max-iters = 7\nseed = 2\n");
  const Outcome r = cli({"bp", "--config", cfg, "--max-iters", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("pp 3 ", 0) == 0);
}

TEST_CASE("smc summary reports a feasible PP run") {
  const Outcome r = cli({"smc", "--method", "pp", "--n", "40", "--rank", "2",
                         "--oversample", "3", "--tol", "1e-5"});
  REQUIRE(r.code == 0);
  std::istringstream line(r.out);
  std::string method;
  long iters = 0;
  double viol = 1.0;
  line >> method >> iters >> viol;
  CHECK(method == "pp");
  CHECK(viol <= 1e-12);
}

TEST_CASE("project agrees with the in-process projection") {
  const std::string prefix = scratch("gen");
  REQUIRE(cli({"gen", "bp", "--m", "6", "--n", "14", "--seed", "3", "--out",
               prefix})
              .code == 0);
  const Matrix a = read_matrix(prefix + ".A.ppmat");
  const Vector b = read_vector(prefix + ".b.ppvec");
  Vector x(14);
  for (Index i = 0; i < 14; ++i) x(i) = 0.5 * static_cast<double>(i % 5) - 1.0;
  write_vector(scratch("x.ppvec"), x);
  const std::string out = scratch("u");
  const Outcome r = cli({"project", "--matrix", prefix + ".A.ppmat", "--b",
                         prefix + ".b.ppvec", "--x", scratch("x.ppvec"),
                         "--eps", "0.5", "--out", out});
  REQUIRE(r.code == 0);
  const Vector u = read_vector(out + ".ppvec");
  const Vector want = project(ConstraintSpec(a, b, 0.5), x);
  CHECK(u == want);
  std::istringstream line(r.out);
  std::string word;
  std::string path;
  double achieved = 0.0;
  line >> word >> path >> achieved;
  CHECK(word == "project");
  CHECK(achieved == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("exit codes") {
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"bp", "--no-such-flag"}).code == 2);
  CHECK(cli({"bp", "--method", "spg"}).code == 2);
  CHECK(cli({"bp", "--eps", "0.1"}).code == 2);
  CHECK(cli({"bp", "--config", scratch("missing.cfg")}).code == 2);
  const std::string cfg = scratch("unknown.cfg");
  write_file(cfg, "bogus-key = 1\n");
  CHECK(cli({"bp", "--config", cfg}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);

  const std::string good = encode_matrix(Matrix::Identity(3, 3));
  write_file(scratch("trunc.ppmat"), good.substr(0, good.size() - 5));
  write_vector(scratch("b3.ppvec"), Vector::Ones(3));
  const Outcome bad = cli({"bp", "--matrix", scratch("trunc.ppmat"), "--b",
                           scratch("b3.ppvec")});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("byte offset") != std::string::npos);
}

TEST_CASE("the ppbench binary reports the same exit codes") {
  const std::string exe = PPBENCH_EXE;
  const auto status = [&](const std::string& args) {
    const std::string cmd =
        exe + " " + args + " > /dev/null 2> /dev/null";
    return WEXITSTATUS(std::system(cmd.c_str()));
  };
  CHECK(status("bp --max-iters 3") == 0);
  CHECK(status("bp --bad-flag") == 2);
  CHECK(status("bp --matrix " + scratch("trunc.ppmat") + " --b " +
               scratch("b3.ppvec")) == 1);
}
