#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "homog/analytic.hpp"
#include "homog/cell_pde.hpp"
#include "homog/errors.hpp"

using namespace homog;

namespace {

MaxTwoLinear max_two() {
  const double a0[] = {1.0, 0.5};
  const double a1[] = {1.5, 2.5};
  return {1, PiecewiseCoeff::alternating(a0, 2), PiecewiseCoeff::alternating(a1, 2),
          SymMat::scalar(1.0), 1.0};
}

}  // namespace

TEST_CASE("constant coefficients need no corrector") {
  const StripesPucci s{PiecewiseCoeff(1.0), PiecewiseCoeff(2.0)};
  const SymMat q = SymMat::make(0.5, 0.3, -1.0);
  const CellSolution sol = solve_cell(s, q, PeriodicGrid(2, 8));
  CHECK(sol.result.iterations == 0);
  CHECK(sol.result.hbar == doctest::Approx(q.trace() + 2.0 * q.lambda_max()));
  CHECK(sol.result.method == Method::Pde);
  CHECK(sol.result.grid_n == 8);
}

TEST_CASE("max-two-linear cell problem reproduces the harmonic-mean formula") {
  for (double q : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
    const double pde = hbar_pde(max_two(), SymMat::scalar(q), 20);
    CHECK(pde == doctest::Approx(hbar_max_two_linear(max_two(), SymMat::scalar(q)))
                     .epsilon(1e-9));
  }
}

TEST_CASE("quadratic cell problem at Q = 4 gives 5") {
  const Quad1D q{1.0, PiecewiseCoeff::two_halves(0.0, 1.0), 1.0, std::nullopt};
  const CellSolution sol = solve_cell(q, SymMat::scalar(4.0), PeriodicGrid(1, 20));
  CHECK(sol.result.hbar == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(std::abs(sol.corrector.mean()) < 1e-12);
  const auto [lo, hi] = std::minmax_element(sol.hamiltonian.begin(), sol.hamiltonian.end());
  CHECK(*hi - *lo <= 1e-9);
  CHECK(sol.result.residual == doctest::Approx(*hi - *lo));
}

TEST_CASE("two-dimensional checkerboard linear operator") {
  const std::vector<double> bp{0.0, 0.5};
  const MaxTwoLinear m{2, PiecewiseCoeff(bp, bp, {1.0, 2.0, 3.0, 0.5}), PiecewiseCoeff(0.0),
                       SymMat::diag(1.0, 2.0), 0.0};
  const SymMat q = SymMat::make(1.0, 0.4, 0.5);
  CHECK(hbar_pde(m, q, 16) == doctest::Approx(hbar_formula(m, q)).epsilon(1e-7));
}

TEST_CASE("warm start from the converged corrector") {
  const Quad1D q{1.0, PiecewiseCoeff::two_halves(0.0, 1.0), 1.0, std::nullopt};
  const PeriodicGrid g(1, 20);
  const CellSolution first = solve_cell(q, SymMat::scalar(1.0), g);
  const CellSolution second =
      solve_cell(q, SymMat::scalar(1.0), g, {}, first.corrector.values);
  CHECK(second.result.iterations == 0);
  CHECK(second.result.hbar == doctest::Approx(first.result.hbar));
}

TEST_CASE("time step respects the ellipticity bound") {
  const PeriodicGrid g(1, 20);
  const double dt = stable_time_step(max_two(), SymMat::scalar(1.0), g);
  CHECK(dt == doctest::Approx(0.9 * (1.0 / 400.0) / (2.0 * 3.0)));
}

TEST_CASE("failures") {
  CellConfig cfg;
  cfg.max_iter = 3;
  try {
    solve_cell(max_two(), SymMat::scalar(1.0), PeriodicGrid(1, 20), cfg);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.iterations() == 3);
    CHECK(e.best_residual() > 0.0);
  }
  CellConfig blow;
  blow.dt = 1.0;
  CHECK_THROWS_AS(solve_cell(max_two(), SymMat::scalar(1.0), PeriodicGrid(1, 20), blow),
                  SolverError);
  CHECK_THROWS_AS(solve_cell(max_two(), SymMat::diag(1, 1), PeriodicGrid(1, 20)),
                  ValidationError);
  CHECK_THROWS_AS(solve_cell(max_two(), SymMat::scalar(1.0), PeriodicGrid(2, 8)),
                  ValidationError);
  CHECK_THROWS_AS(solve_cell(max_two(), SymMat::scalar(1.0), PeriodicGrid(1, 20), {}, {1.0}),
                  ValidationError);
  CHECK(method_name(Method::Lp) == "lp");
}
