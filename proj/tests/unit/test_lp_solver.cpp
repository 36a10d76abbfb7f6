#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "homog/errors.hpp"
#include "homog/lp_solver.hpp"

using namespace homog::lp;

namespace {

StandardFormLp dense(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                     const std::vector<double>& c) {
  StandardFormLp lp;
  lp.rows = a.size();
  lp.rhs = b;
  for (std::size_t j = 0; j < c.size(); ++j) {
    std::vector<std::size_t> rows;
    std::vector<double> vals;
    for (std::size_t i = 0; i < a.size(); ++i) {
      rows.push_back(i);
      vals.push_back(a[i][j]);
    }
    lp.add_column(c[j], rows, vals);
  }
  return lp;
}

// Best objective over all basic feasible solutions, or NaN if none.
double enumerate_vertices(const std::vector<std::vector<double>>& a,
                          const std::vector<double>& b, const std::vector<double>& c) {
  const std::size_t m = a.size(), n = c.size();
  double best = NAN;
  std::vector<int> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(m), 1);
  std::sort(pick.begin(), pick.end());
  do {
    Eigen::MatrixXd basis(m, m);
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j)
      if (pick[j]) cols.push_back(j);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) basis(i, k) = a[i][cols[k]];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
    if (lu.rank() < static_cast<long>(m)) continue;
    Eigen::VectorXd rhs(m);
    for (std::size_t i = 0; i < m; ++i) rhs(i) = b[i];
    const Eigen::VectorXd x = lu.solve(rhs);
    if (x.minCoeff() < -1e-9) continue;
    double obj = 0.0;
    for (std::size_t k = 0; k < m; ++k) obj += c[cols[k]] * x(k);
    if (std::isnan(best) || obj > best) best = obj;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace

TEST_CASE("textbook maximization") {
  // max 3x + 5y; x <= 4, 2y <= 12, 3x + 2y <= 18  ->  (2, 6), 36.
  const auto lp = dense({{1, 0, 1, 0, 0}, {0, 2, 0, 1, 0}, {3, 2, 0, 0, 1}}, {4, 12, 18},
                        {3, 5, 0, 0, 0});
  const Solution s = solve(lp);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.objective == doctest::Approx(36.0));
  CHECK(s.x[0] == doctest::Approx(2.0));
  CHECK(s.x[1] == doctest::Approx(6.0));
  CHECK(lp.residual(s.x) < 1e-12);
}

TEST_CASE("negative right-hand sides and redundant rows") {
  const auto lp = dense({{-1, -1, 0}, {1, 1, 0}, {1, 0, 1}}, {-1, 1, 0.6}, {1, 2, 0});
  const Solution s = solve(lp);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.objective == doctest::Approx(2.0));
  CHECK(s.redundant_rows == 1);
  CHECK(lp.residual(s.x) < 1e-12);
}

TEST_CASE("infeasible and unbounded programs") {
  CHECK(solve(dense({{1, 1}, {1, 1}}, {1, 2}, {1, 1})).status == Status::Infeasible);
  CHECK(solve(dense({{1, -1}}, {0}, {1, 0})).status == Status::Unbounded);
}

TEST_CASE("iteration limit") {
  SimplexOptions opts;
  opts.max_iterations = 1;
  const auto lp = dense({{1, 0, 1, 0, 0}, {0, 2, 0, 1, 0}, {3, 2, 0, 0, 1}}, {4, 12, 18},
                        {3, 5, 0, 0, 0});
  CHECK(solve(lp, opts).status == Status::IterationLimit);
}

TEST_CASE("crash basis") {
  const auto lp = dense({{1, 0, 1, 0, 0}, {0, 2, 0, 1, 0}, {3, 2, 0, 0, 1}}, {4, 12, 18},
                        {3, 5, 0, 0, 0});
  const Solution warm = solve(lp, {}, {2, 3, 4});
  CHECK(warm.used_crash);
  CHECK(warm.objective == doctest::Approx(36.0));
  // x = 4, y = 6 leaves the third slack at -6.
  const Solution fallback = solve(lp, {}, {0, 1, 4});
  CHECK_FALSE(fallback.used_crash);
  CHECK(fallback.objective == doctest::Approx(36.0));
  CHECK_FALSE(solve(lp, {}, {0, 0, 1}).used_crash);
}

TEST_CASE("random programs agree with vertex enumeration") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.1, 1.0);
  int solved = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = 2 + trial % 3, n = m + 3;
    std::vector<std::vector<double>> a(m, std::vector<double>(n));
    for (auto& row : a)
      for (auto& v : row) v = u(rng);
    // Bounded feasible region: a positive normalization row.
    for (auto& v : a[0]) v = pos(rng);
    std::vector<double> x0(n);
    for (auto& v : x0) v = trial % 4 == 0 ? std::max(0.0, u(rng)) : pos(rng);
    std::vector<double> b(m, 0.0), c(n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) b[i] += a[i][j] * x0[j];
    for (auto& v : c) v = u(rng);
    const Solution s = solve(dense(a, b, c));
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.objective == doctest::Approx(enumerate_vertices(a, b, c)).epsilon(1e-8));
    CHECK(dense(a, b, c).residual(s.x) < 1e-9);
    CHECK(*std::min_element(s.x.begin(), s.x.end()) >= -1e-12);
    ++solved;
  }
  CHECK(solved == 150);
}

TEST_CASE("malformed input") {
  StandardFormLp lp;
  lp.rows = 1;
  lp.rhs = {1.0};
  CHECK_THROWS_AS(lp.add_column(1.0, {1}, {1.0}), homog::ValidationError);
  CHECK_THROWS_AS(lp.add_column(1.0, {0, 0}, {1.0}), homog::ValidationError);
  lp.rhs = {};
  CHECK_THROWS_AS(solve(lp), homog::ValidationError);
}
