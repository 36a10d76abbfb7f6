#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "homog/dirichlet.hpp"
#include "homog/errors.hpp"

using namespace homog;

namespace {

const LocalOperator kStiff(LocalOperator::MaxTwo{1.0, 1.5, SymMat::scalar(1.0), 1.0});
const LocalOperator kSoft(LocalOperator::MaxTwo{0.5, 2.5, SymMat::scalar(1.0), 1.0});
const LocalOperator kQuad(LocalOperator::Quad{1.0, 1.0, 1.0});

}  // namespace

TEST_CASE("periodic media alternate and random media are reproducible") {
  const Medium p = build_medium(0.1, Arrangement::Periodic);
  REQUIRE(p.cells() == 10);
  for (std::size_t i = 0; i < 10; ++i) CHECK(p.labels[i] == (i % 2 == 0 ? 1 : 2));
  const Medium a = build_medium(1.0 / 320, Arrangement::Random, 42);
  const Medium b = build_medium(1.0 / 320, Arrangement::Random, 42);
  const Medium c = build_medium(1.0 / 320, Arrangement::Random, 43);
  CHECK(a.labels == b.labels);
  CHECK(a.labels != c.labels);
  const auto ones = std::count(a.labels.begin(), a.labels.end(), 1);
  CHECK(ones > 110);
  CHECK(ones < 210);
  CHECK(arrangement_name(Arrangement::Random) == "random");
}

TEST_CASE("invalid cell widths") {
  CHECK_THROWS_AS(build_medium(0.3, Arrangement::Periodic), ValidationError);
  CHECK_THROWS_AS(build_medium(0.0, Arrangement::Periodic), ValidationError);
  CHECK_THROWS_AS(build_medium(2.0, Arrangement::Periodic), ValidationError);
}

TEST_CASE("interval stencil is exact for quadratics vanishing at the ends") {
  const std::size_t n = 10;
  const double eps = 0.1;
  const auto x = interval_nodes(n);
  CHECK(x.front() == doctest::Approx(0.05));
  CHECK(x.back() == doctest::Approx(0.95));
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = 3.0 * x[i] * (x[i] - 1.0);
  for (double d : interval_second_differences(u, eps)) CHECK(d == doctest::Approx(6.0));
}

TEST_CASE("homogeneous medium reproduces the exact parabola") {
  // A single constituent: u'' = r with H(r) = rhs, and the stencil is exact.
  const Medium m = build_medium(0.05, Arrangement::Periodic);
  const DirichletSolution s = solve_eps(kQuad, kQuad, m, 2.0);
  // r + r^2 - 1 = 2.
  const double r = 0.5 * (-1.0 + std::sqrt(13.0));
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    CHECK(s.u[i] == doctest::Approx(0.5 * r * s.x[i] * (s.x[i] - 1.0)).epsilon(1e-10));
  }
  CHECK(s.residual <= 1e-10);
}

TEST_CASE("layered medium converges and satisfies the discrete equation") {
  const Medium m = build_medium(1.0 / 40, Arrangement::Random, 7);
  const DirichletSolution s = solve_eps(kStiff, kSoft, m, 2.0);
  CHECK(s.residual <= 1e-10);
  const auto d2 = interval_second_differences(s.u, m.eps);
  for (std::size_t i = 0; i < d2.size(); ++i) {
    const LocalOperator& op = m.labels[i] == 1 ? kStiff : kSoft;
    CHECK(op(SymMat::scalar(d2[i])) == doctest::Approx(2.0).epsilon(1e-9));
  }
  CHECK(*std::max_element(s.u.begin(), s.u.end()) < 0.0);
}

TEST_CASE("solver failure carries diagnostics") {
  DirichletConfig cfg;
  cfg.max_iter = 1;
  cfg.dt0 = 1e-6;
  try {
    solve_eps(kStiff, kSoft, build_medium(0.1, Arrangement::Periodic), 2.0, cfg);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.iterations() == 1);
    CHECK(e.best_residual() > 0.0);
  }
  cfg.tol = 0.0;
  CHECK_THROWS_AS(solve_eps(kStiff, kSoft, build_medium(0.1, Arrangement::Periodic), 2.0, cfg),
                  ValidationError);
}

TEST_CASE("homogenized solution by bisection") {
  const HomogenizedSolution s = solve_homogenized([](double r) { return 3.0 * r + 1.0; }, 2.0);
  CHECK(s.r == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(s(0.5) == doctest::Approx(-1.0 / 24.0));
  const std::vector<double> x{0.0, 1.0};
  const auto v = s.sample(x);
  CHECK(v[0] == 0.0);
  CHECK(v[1] == 0.0);
  CHECK_THROWS_AS(solve_homogenized([](double r) { return std::tanh(r); }, 2.0),
                  ValidationError);
}
