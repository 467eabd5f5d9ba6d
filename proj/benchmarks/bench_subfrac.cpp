#include <benchmark/benchmark.h>

#include "subfrac/subfrac.hpp"

using namespace subfrac;

namespace {

void BM_mittag_leffler(benchmark::State& state) {
  const double alpha = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mittag_leffler(alpha, 3.7));
  }
}
BENCHMARK(BM_mittag_leffler);

void BM_substantial_integral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  OperatorParams params{1.0, 2.0, 0.5, 0.0};
  Grid grid(0.0, 1.0, n, params.rho);
  GridFunction f = sample_power_exp(PowerExpSpec{2.0, params}, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(substantial_integral(params, f));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_substantial_integral)->Arg(256)->Arg(1024)->Arg(4096)->Complexity();

void BM_rl_derivative(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  OperatorParams params{1.0, 2.0, 0.5, 0.0};
  Grid grid(0.0, 1.0, n, params.rho);
  GridFunction f = sample_power_exp(PowerExpSpec{2.0, params}, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(substantial_rl_derivative(params, f));
  }
}
BENCHMARK(BM_rl_derivative)->Arg(256)->Arg(1024);

void BM_solve_picard(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  IvpProblem pb;
  pb.params = OperatorParams{1.0, 0.5, 0.5, 0.0};
  pb.rhs = [](double, double y) { return 0.9 * y; };
  pb.initial.b = {1.0};
  pb.K = 2.0;
  pb.h_star = 1.0;
  pb.L = 0.9;
  pb.M = 2.7;
  SolverConfig cfg;
  cfg.n = n;
  cfg.allow_outside_existence = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_picard(pb, 1.0, cfg));
  }
}
BENCHMARK(BM_solve_picard)->Arg(128)->Arg(512);

void BM_solve_product_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  IvpProblem pb;
  pb.params = OperatorParams{1.0, 0.5, 0.5, 0.0};
  pb.rhs = [](double, double y) { return 0.9 * y; };
  pb.initial.b = {1.0};
  pb.K = 2.0;
  pb.h_star = 1.0;
  pb.L = 0.9;
  pb.M = 2.7;
  SolverConfig cfg;
  cfg.n = n;
  cfg.allow_outside_existence = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_product_step(pb, 1.0, cfg));
  }
}
BENCHMARK(BM_solve_product_step)->Arg(128)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
