#include <benchmark/benchmark.h>

#include <trfds/driver.hpp>
#include <trfds/fd_gradient.hpp>
#include <trfds/predprey.hpp>
#include <trfds/registry.hpp>

using namespace trfds;

namespace {

void BM_ForwardGradient(benchmark::State& state) {
  Problem p = make_sphere(state.range(0));
  const Vector x = p.x0();
  const double fx = p.evaluate(x);
  for (auto _ : state) benchmark::DoNotOptimize(forward_gradient(p, x, 1e-6, fx));
}
BENCHMARK(BM_ForwardGradient)->Arg(5)->Arg(20);

void BM_SolveRosenbrock(benchmark::State& state) {
  for (auto _ : state) {
    Problem p = make_rosenbrock();
    benchmark::DoNotOptimize(solve(p, default_config(p)));
  }
}
BENCHMARK(BM_SolveRosenbrock)->Unit(benchmark::kMillisecond);

void BM_SolveBoxedBeale(benchmark::State& state) {
  for (auto _ : state) {
    Problem p = make_problem("mw_beale",
                             FeasibleSet::box(Vector::Constant(2, 0.1), Vector::Constant(2, 20.0)),
                             true);
    SolverConfig cfg = default_config(p);
    cfg.budget_simplex_gradients = 25;
    benchmark::DoNotOptimize(solve(p, cfg));
  }
}
BENCHMARK(BM_SolveBoxedBeale)->Unit(benchmark::kMillisecond);

void BM_PredPreyIntegration(benchmark::State& state) {
  const PredPreyParams truth = PredPreyParams::truth();
  const std::vector<double> times = standard_times();
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_predprey(truth, predprey_y0(), predprey_z0(), times));
}
BENCHMARK(BM_PredPreyIntegration)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
