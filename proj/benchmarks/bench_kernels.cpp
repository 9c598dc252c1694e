#include <benchmark/benchmark.h>

#include "proxproj/bp.hpp"
#include "proxproj/emd.hpp"
#include "proxproj/generators.hpp"
#include "proxproj/projection.hpp"
#include "proxproj/prox.hpp"

using namespace proxproj;

namespace {

Matrix random_matrix(std::uint64_t seed, Index rows, Index cols) {
  Rng rng(seed);
  Matrix a(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) a(i, j) = rng.normal();
  }
  return a;
}

Vector random_vector(std::uint64_t seed, Index n) {
  return random_matrix(seed, n, 1).col(0);
}

// Projection onto {x : ||Ax - b|| <= eps} through the cached SVD or the
// shifted Gram matrix.
void projection(benchmark::State& state, ProjectionPath path) {
  const Index m = state.range(0);
  const Index n = 4 * m;
  const Matrix a = random_matrix(1, m, n);
  const Vector b = random_vector(2, m);
  const ConstraintSpec spec(a, b, 0.1 * b.norm(), path);
  const Vector x = 5.0 * random_vector(3, n);
  for (auto _ : state) benchmark::DoNotOptimize(project(spec, x));
}
BENCHMARK_CAPTURE(projection, svd, ProjectionPath::svd)->Arg(50)->Arg(200);
BENCHMARK_CAPTURE(projection, spd, ProjectionPath::spd)->Arg(50)->Arg(200);

TridiagonalMatrix laplacian(Index n) {
  return {Vector::Constant(n - 1, -1.0), Vector::Constant(n, 2.5),
          Vector::Constant(n - 1, -1.0)};
}

void thomas(benchmark::State& state) {
  const TridiagonalMatrix t = laplacian(state.range(0));
  const Vector r = random_vector(4, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(thomas_solve(t, r));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(thomas)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oN);

void dense_spd(benchmark::State& state) {
  const Matrix g = laplacian(state.range(0)).dense();
  const Vector r = random_vector(4, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spd_solve(g, r));
}
BENCHMARK(dense_spd)->RangeMultiplier(4)->Range(64, 1024);

void singular_value_threshold(benchmark::State& state) {
  const Matrix x = random_matrix(5, state.range(0), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(svt(x, 1.0));
}
BENCHMARK(singular_value_threshold)->Arg(50)->Arg(100)->Arg(200);

void bp_iteration(benchmark::State& state) {
  const BpInstance inst = gen_bp(state.range(0), 4 * state.range(0), 0.05, 6);
  const ConstraintSpec spec(inst.problem.a, inst.problem.b, 0.0,
                            ProjectionPath::spd);
  const ProxOperator prox = l1_prox();
  SolverConfig cfg;
  SolverState s{Vector::Zero(inst.problem.a.cols()), Vector(), 0};
  for (auto _ : state) {
    s = pp_step(s, spec, prox, cfg);
    benchmark::DoNotOptimize(s.x.data());
  }
}
BENCHMARK(bp_iteration)->Arg(50)->Arg(200);

void emd_projection(benchmark::State& state) {
  const Index n = state.range(0);
  const EmdProblem p = gen_emd_pair(EmdPairKind::blobs, n, {}, 7);
  const Matrix z = random_matrix(8, 2 * (n - 1), n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.op->project(z, p.rhs(), p.eps));
  }
}
BENCHMARK(emd_projection)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
