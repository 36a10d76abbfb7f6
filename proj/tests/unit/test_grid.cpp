#include <doctest.h>

#include <cmath>
#include <vector>

#include "homog/errors.hpp"
#include "homog/grid.hpp"

using homog::PeriodicGrid;

namespace {

// A periodic field whose discrete Hessian is known in closed form:
// D_h^2 cos(2 pi k y) = -(4 / h^2) sin^2(pi k h) cos(2 pi k y).
double symbol(int k, double h) {
  const double s = std::sin(M_PI * k * h);
  return -4.0 * s * s / (h * h);
}

}  // namespace

TEST_CASE("grid layout") {
  const PeriodicGrid g(2, 8);
  CHECK(g.size() == 64);
  CHECK(g.spacing() == doctest::Approx(0.125));
  const auto y = g.node(g.index(1, 2));
  CHECK(y[0] == doctest::Approx(0.1875));
  CHECK(y[1] == doctest::Approx(0.3125));
  CHECK(g.wrap(-1) == 7);
  CHECK(g.wrap(8) == 0);
  CHECK_THROWS_AS(PeriodicGrid(1, 3), homog::ValidationError);
  CHECK_THROWS_AS(PeriodicGrid(3, 8), homog::ValidationError);
}

TEST_CASE("1D second difference matches the discrete symbol") {
  const int n = 16;
  const PeriodicGrid g(1, n);
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) u[i] = std::cos(2 * M_PI * 3 * g.node(i)[0]);
  const auto d2 = homog::second_differences(u, g);
  for (int i = 0; i < n; ++i) {
    CHECK(d2[i].q11 == doctest::Approx(symbol(3, g.spacing()) * u[i]).epsilon(1e-10));
  }
}

TEST_CASE("2D stencil reproduces each Hessian entry of a product mode") {
  const int n = 12;
  const PeriodicGrid g(2, n);
  const double h = g.spacing();
  std::vector<double> u(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto y = g.node(k);
    u[k] = std::sin(2 * M_PI * y[0]) * std::sin(2 * M_PI * 2 * y[1]);
  }
  const auto d2 = homog::second_differences(u, g);
  // Central first differences: D_h sin(2 pi k y) = sin(2 pi k h) / h cos(2 pi k y).
  const double d1 = std::sin(2 * M_PI * h) / h;
  const double d2fac = std::sin(2 * M_PI * 2 * h) / h;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto y = g.node(k);
    const double s1 = std::sin(2 * M_PI * y[0]), c1 = std::cos(2 * M_PI * y[0]);
    const double s2 = std::sin(4 * M_PI * y[1]), c2 = std::cos(4 * M_PI * y[1]);
    CHECK(d2[k].q11 == doctest::Approx(symbol(1, h) * s1 * s2).epsilon(1e-9));
    CHECK(d2[k].q22 == doctest::Approx(symbol(2, h) * s1 * s2).epsilon(1e-9));
    CHECK(d2[k].q12 == doctest::Approx(d1 * d2fac * c1 * c2).epsilon(1e-9));
  }
}

TEST_CASE("constants lie in the kernel of every stencil") {
  const PeriodicGrid g(2, 6);
  for (std::size_t k = 0; k < g.size(); ++k) {
    double s11 = 0, s12 = 0, s22 = 0;
    for (const auto& e : homog::hessian_stencil(g, k)) {
      s11 += e.w11;
      s12 += e.w12;
      s22 += e.w22;
    }
    CHECK(std::abs(s11) < 1e-9);
    CHECK(std::abs(s12) < 1e-9);
    CHECK(std::abs(s22) < 1e-9);
  }
}
