#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "homog/analytic.hpp"
#include "homog/cell_pde.hpp"
#include "homog/errors.hpp"
#include "homog/invariant_lp.hpp"

using namespace homog;

namespace {

MaxTwoLinear max_two() {
  const double a0[] = {1.0, 0.5};
  const double a1[] = {1.5, 2.5};
  return {1, PiecewiseCoeff::alternating(a0, 2), PiecewiseCoeff::alternating(a1, 2),
          SymMat::scalar(1.0), 1.0};
}

Quad1D quad(double cap) { return {1.0, PiecewiseCoeff::two_halves(0.0, 1.0), 1.0, cap}; }

void check_measure(const LpOutcome& o) {
  CHECK(o.measure.min_weight() >= 0.0);
  CHECK(std::abs(o.measure.total() - 1.0) <= 1e-9);
  CHECK(o.adjoint_residual <= 1e-9);
}

}  // namespace

TEST_CASE("control grids") {
  const ControlGrid g = ControlGrid::uniform(quad(8.0), 41);
  CHECK(g.size() == 41);
  CHECK(g.points.front().value == 0.0);
  CHECK(g.points.back().value == 8.0);
  CHECK(g.points[10].value == doctest::Approx(2.0));
  const StripesPucci s{PiecewiseCoeff(1.0), PiecewiseCoeff::two_halves(0.0, 2.0)};
  const ControlGrid sg = ControlGrid::uniform(s, 5);
  CHECK(sg.size() == 6);
  CHECK(sg.points.front().value == -1.0);
  CHECK(sg.points.back().zero_vector);
  CHECK(default_control_count(max_two()) == 2);
  CHECK(default_control_count(s) == 41);
  CHECK_THROWS_AS(ControlGrid::uniform(max_two(), 1), ValidationError);
  Quad1D open = quad(1.0);
  open.alpha_cap.reset();
  CHECK_THROWS_AS(ControlGrid::uniform(open, 5), ValidationError);
}

TEST_CASE("assembled program layout") {
  const PeriodicGrid g(1, 8);
  const LpProblem p = assemble_lp(max_two(), SymMat::scalar(1.0), g,
                                  ControlGrid::uniform(max_two(), 3));
  CHECK(p.program.rows == 9);
  CHECK(p.program.cols() == 24);
  CHECK(p.variable(2, 1) == 7);
  CHECK(p.program.rhs[0] == 1.0);
  for (std::size_t j = 0; j < p.program.cols(); ++j) {
    double adjoint_sum = 0.0;
    bool normalized = false;
    for (std::size_t k = p.program.col_start[j]; k < p.program.col_start[j + 1]; ++k) {
      if (p.program.row_index[k] == 0) {
        normalized = p.program.value[k] == 1.0;
      } else {
        adjoint_sum += p.program.value[k];
      }
    }
    CHECK(normalized);
    CHECK(std::abs(adjoint_sum) < 1e-12);
  }
  CHECK_THROWS_AS(assemble_lp(max_two(), SymMat::diag(1, 1), g,
                              ControlGrid::uniform(max_two(), 2)),
                  ValidationError);
}

TEST_CASE("linear operators: endpoints suffice and refinement changes nothing") {
  for (double q : {-1.0, 0.5, 2.0}) {
    const LpRoute two = hbar_lp_full(max_two(), SymMat::scalar(q), 20, 2);
    const double five = hbar_lp(max_two(), SymMat::scalar(q), 20, 5).hbar;
    CHECK(two.result.hbar ==
          doctest::Approx(hbar_max_two_linear(max_two(), SymMat::scalar(q))).epsilon(1e-10));
    CHECK(five == doctest::Approx(two.result.hbar).epsilon(1e-10));
    check_measure(two.outcome);
  }
}

TEST_CASE("marginal for a linear operator is HM(c)/c") {
  const LpRoute r = hbar_lp_full(max_two(), SymMat::scalar(1.0), 20, 2);
  const auto marginal = r.outcome.measure.y_marginal();
  // c = a0 + a1 alternates {5/2, 3}, so HM(c) = 30/11.
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    const double c = i < 10 ? 2.5 : 3.0;
    CHECK(marginal[i] * 20.0 == doctest::Approx(30.0 / 11.0 / c).epsilon(1e-9));
  }
}

TEST_CASE("constant coefficients give a uniform marginal") {
  const Quad1D q{1.0, PiecewiseCoeff(0.5), 0.0, 4.0};
  const LpRoute r = hbar_lp_full(q, SymMat::scalar(2.0), 10, 9);
  // H = Q + b (Q^+)^2 with constant coefficients: no corrector is needed.
  CHECK(r.result.hbar == doctest::Approx(2.0 + 0.5 * 4.0));
  for (double m : r.outcome.measure.y_marginal()) CHECK(m == doctest::Approx(0.1));
}

TEST_CASE("quadratic operator at Q = 4") {
  const LpRoute r = hbar_lp_full(quad(8.0), SymMat::scalar(4.0), 20, 41);
  check_measure(r.outcome);
  CHECK(r.result.hbar == doctest::Approx(5.0).epsilon(1e-9));
  const auto marginal = r.outcome.measure.y_marginal();
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    CHECK(std::abs(marginal[i] * 20.0 - (i < 10 ? 5.0 / 3.0 : 1.0 / 3.0)) <= 2.0 / 20.0);
  }
  // On the b = 1 half the control mass sits at alpha* = 2.
  const auto& m = r.outcome.measure;
  double near = 0.0, half = 0.0;
  for (std::size_t i = 10; i < 20; ++i) {
    for (std::size_t j = 0; j < m.controls.size(); ++j) {
      const double w = m.weights[i * m.controls.size() + j];
      half += w;
      if (std::abs(m.controls.points[j].value - 2.0) < 0.21) near += w;
    }
  }
  CHECK(near / half == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("weak duality sandwich") {
  // {0, 2, 4, 6, 8} is a subset of the 41-point grid, so its optimum is feasible there.
  for (double q : {0.5, 1.0, 3.0}) {
    const double coarse = hbar_lp(quad(8.0), SymMat::scalar(q), 20, 5).hbar;
    const double fine = hbar_lp(quad(8.0), SymMat::scalar(q), 20, 41).hbar;
    const double pde = hbar_pde(quad(8.0), SymMat::scalar(q), 20);
    CHECK(coarse <= fine + 1e-12);
    CHECK(fine <= pde + 10 * 1e-9);
  }
}

TEST_CASE("two-dimensional stripes program") {
  const StripesPucci s{PiecewiseCoeff(1.0), PiecewiseCoeff::two_halves(0.0, 2.0)};
  const SymMat q = SymMat::from_eigen(1.0, -0.5, 0.4);
  const LpRoute r = hbar_lp_full(s, q, 8, 21);
  check_measure(r.outcome);
  const double pde = hbar_pde(s, q, 8);
  CHECK(r.result.hbar <= pde + 1e-6);
  CHECK(r.result.hbar >= pde - 2e-2);
  CHECK(solve_lp(assemble_lp(s, q, PeriodicGrid(2, 8), ControlGrid::uniform(s, 21)))
            .objective == doctest::Approx(r.result.hbar).epsilon(1e-9));
}

TEST_CASE("warm start and cold start agree") {
  const PeriodicGrid g(1, 20);
  const LpProblem p = assemble_lp(quad(10.0), SymMat::scalar(1.0), g,
                                  ControlGrid::uniform(quad(10.0), 81));
  const LpOutcome cold = solve_lp(p);
  const LpOutcome warm = solve_lp(p, std::vector<Control>(20, Control{1.0, false}));
  CHECK(cold.objective == doctest::Approx(warm.objective).epsilon(1e-12));
  check_measure(cold);
  check_measure(warm);
}
