#include <benchmark/benchmark.h>

#include <trfds/projections.hpp>
#include <trfds/rng.hpp>
#include <trfds/subproblem.hpp>

using namespace trfds;

namespace {

QuadraticModel random_model(Index n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Vector g(n);
  Matrix A(n, n);
  for (Index i = 0; i < n; ++i) {
    g[i] = rng.normal();
    for (Index j = 0; j < n; ++j) A(i, j) = rng.normal();
  }
  return {0.0, g, Matrix(0.5 * (A + A.transpose()))};
}

void BM_CauchyStep(benchmark::State& state) {
  const QuadraticModel m = random_model(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_step(m, 1.0));
}
BENCHMARK(BM_CauchyStep)->Arg(5)->Arg(20)->Arg(100);

void BM_TruncatedCg(benchmark::State& state) {
  const QuadraticModel m = random_model(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(truncated_cg(m, 1.0));
}
BENCHMARK(BM_TruncatedCg)->Arg(5)->Arg(20)->Arg(100);

void BM_GeneralizedCauchy(benchmark::State& state) {
  const Index n = state.range(0);
  const QuadraticModel m = random_model(n, 3);
  const FeasibleSet box = FeasibleSet::box(Vector::Constant(n, -0.5), Vector::Constant(n, 0.5));
  const Vector x = Vector::Zero(n);
  for (auto _ : state) benchmark::DoNotOptimize(generalized_cauchy_step(m, 1.0, box, x));
}
BENCHMARK(BM_GeneralizedCauchy)->Arg(5)->Arg(20);

void BM_ProjectedAccel(benchmark::State& state) {
  const Index n = state.range(0);
  const QuadraticModel m = random_model(n, 4);
  const FeasibleSet box = FeasibleSet::box(Vector::Constant(n, -0.5), Vector::Constant(n, 0.5));
  const Vector x = Vector::Zero(n);
  TrialStep warm;
  for (auto _ : state) benchmark::DoNotOptimize(projected_accel(m, 1.0, box, x, warm));
}
BENCHMARK(BM_ProjectedAccel)->Arg(5)->Arg(20);

void BM_DykstraProjection(benchmark::State& state) {
  const Index n = state.range(0);
  SplitMix64 rng(5);
  Vector z(n);
  for (Index i = 0; i < n; ++i) z[i] = 2.0 * rng.normal();
  const std::vector<Projector> sets = {
      ball_projector(1.0),
      [n](const Vector& d) {
        return Vector(d.cwiseMax(Vector::Constant(n, -0.4)).cwiseMin(Vector::Constant(n, 0.4)));
      },
  };
  for (auto _ : state) benchmark::DoNotOptimize(dykstra_project(z, sets));
}
BENCHMARK(BM_DykstraProjection)->Arg(5)->Arg(50);

} // namespace
