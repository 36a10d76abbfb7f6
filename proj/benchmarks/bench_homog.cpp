#include <benchmark/benchmark.h>

#include "homog/analytic.hpp"
#include "homog/cell_pde.hpp"
#include "homog/dirichlet.hpp"
#include "homog/invariant_lp.hpp"
#include "homog/rates.hpp"

namespace {

using namespace homog;

MaxTwoLinear max_two() {
  const std::vector<double> c0{1.0, 0.5};
  const std::vector<double> c1{1.5, 2.5};
  return MaxTwoLinear{1, PiecewiseCoeff::alternating(c0, 2),
                      PiecewiseCoeff::alternating(c1, 2), SymMat::scalar(1.0), 1.0};
}

StripesPucci stripes() {
  return StripesPucci{PiecewiseCoeff(1.0), PiecewiseCoeff::two_halves(0.0, 2.0)};
}

void BM_CellSolve1D(benchmark::State& state) {
  const auto op = max_two();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hbar_pde(op, SymMat::scalar(1.0), n));
}
BENCHMARK(BM_CellSolve1D)->Arg(20)->Arg(40)->Arg(80);

void BM_CellSolveStripes(benchmark::State& state) {
  const auto op = stripes();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hbar_pde(op, SymMat::diag(1.0, -0.5), n));
  }
}
BENCHMARK(BM_CellSolveStripes)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_InvariantLpQuad(benchmark::State& state) {
  const Quad1D op{1.0, PiecewiseCoeff::two_halves(0.0, 1.0), 1.0, 10.0};
  const auto n_alpha = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hbar_lp(op, SymMat::scalar(1.0), 20, n_alpha).hbar);
  }
}
BENCHMARK(BM_InvariantLpQuad)->Arg(21)->Arg(81)->Unit(benchmark::kMillisecond);

void BM_InvariantLpStripes(benchmark::State& state) {
  const auto op = stripes();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hbar_lp(op, SymMat::from_eigen(1.0, -0.5, 0.4), n, 11).hbar);
  }
}
BENCHMARK(BM_InvariantLpStripes)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_StripesLowerBound(benchmark::State& state) {
  const auto op = stripes();
  const SymMat q = SymMat::from_eigen(1.5, -0.7, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(hbar_stripes_lower_bound(op, q));
}
BENCHMARK(BM_StripesLowerBound);

void BM_DirichletRandom(benchmark::State& state) {
  const StudySetup setup = study_setup(StudyOperator::Quad1D);
  const double eps = 1.0 / static_cast<double>(state.range(0));
  const Medium medium = build_medium(eps, Arrangement::Random, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_eps(setup.first, setup.second, medium, 2.0).residual);
  }
}
BENCHMARK(BM_DirichletRandom)->Arg(40)->Arg(320);

}  // namespace

BENCHMARK_MAIN();
