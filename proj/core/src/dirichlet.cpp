#include "homog/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "homog/errors.hpp"

namespace homog {

namespace {

std::size_t cell_count(double eps) {
  if (!(eps > 0.0) || eps > 1.0) throw ValidationError("eps must lie in (0, 1]");
  const double inv = 1.0 / eps;
  const double rounded = std::round(inv);
  if (std::abs(inv - rounded) > 1e-9 * rounded) {
    throw ValidationError("1/eps must be an integer, got eps = " + std::to_string(eps));
  }
  return static_cast<std::size_t>(rounded);
}

// Rows of the second-difference matrix: sub, diag and super coefficients.
struct Tridiagonal {
  std::vector<double> lower, diag, upper;
};

Tridiagonal second_difference_matrix(std::size_t n, double eps) {
  Tridiagonal t{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                std::vector<double>(n, 0.0)};
  const double inv = 1.0 / (eps * eps);
  if (n == 1) {
    t.diag[0] = -8.0 * inv;
    return t;
  }
  for (std::size_t i = 0; i < n; ++i) {
    t.lower[i] = inv;
    t.diag[i] = -2.0 * inv;
    t.upper[i] = inv;
  }
  const double edge = 4.0 / 3.0 * inv;
  t.lower[0] = 0.0;
  t.diag[0] = -3.0 * edge;
  t.upper[0] = edge;
  t.lower[n - 1] = edge;
  t.diag[n - 1] = -3.0 * edge;
  t.upper[n - 1] = 0.0;
  return t;
}

void apply(const Tridiagonal& t, std::span<const double> u, std::vector<double>& out) {
  const std::size_t n = u.size();
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = t.diag[i] * u[i];
    if (i > 0) v += t.lower[i] * u[i - 1];
    if (i + 1 < n) v += t.upper[i] * u[i + 1];
    out[i] = v;
  }
}

// Thomas algorithm; `rhs` is overwritten with the solution.
void solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                       const std::vector<double>& upper, std::vector<double>& rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

}  // namespace

std::string_view arrangement_name(Arrangement a) {
  return a == Arrangement::Periodic ? "periodic" : "random";
}

Medium build_medium(double eps, Arrangement arrangement, std::uint64_t seed) {
  const std::size_t n = cell_count(eps);
  Medium m{eps, arrangement, seed, std::vector<std::uint8_t>(n)};
  if (arrangement == Arrangement::Periodic) {
    for (std::size_t i = 0; i < n; ++i) m.labels[i] = i % 2 == 0 ? 1 : 2;
  } else {
    std::mt19937_64 rng(seed);
    for (auto& l : m.labels) l = (rng() >> 63) != 0 ? 2 : 1;
  }
  return m;
}

std::vector<double> interval_nodes(std::size_t cells) {
  std::vector<double> x(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    x[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(cells);
  }
  return x;
}

std::vector<double> interval_second_differences(std::span<const double> u, double eps) {
  std::vector<double> out;
  if (u.empty()) return out;
  apply(second_difference_matrix(u.size(), eps), u, out);
  return out;
}

DirichletSolution solve_eps(const LocalOperator& first, const LocalOperator& second,
                            const Medium& medium, double rhs, const DirichletConfig& cfg) {
  const std::size_t n = medium.cells();
  if (n == 0) throw ValidationError("solve_eps: empty medium");
  if (!(cfg.tol > 0.0) || cfg.max_iter <= 0 || !(cfg.dt0 > 0.0)) {
    throw ValidationError("solve_eps: invalid solver configuration");
  }
  const double eps = medium.eps;
  const Tridiagonal d2 = second_difference_matrix(n, eps);

  auto op_at = [&](std::size_t i) -> const LocalOperator& {
    return medium.labels[i] == 1 ? first : second;
  };

  DirichletSolution sol;
  sol.x = interval_nodes(n);
  sol.u.assign(n, 0.0);
  std::vector<double> q, f(n), slope(n);

  auto residual = [&]() {
    apply(d2, sol.u, q);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const LocalOperator& op = op_at(i);
      f[i] = op(SymMat::scalar(q[i])) - rhs;
      slope[i] = op.slope_1d(q[i]);
      worst = std::max(worst, std::abs(f[i]));
    }
    return worst;
  };

  double res = residual();
  double dt = cfg.dt0 * eps * eps;
  std::vector<double> lower(n), diag(n), upper(n), step(n);
  long it = 0;
  while (res > cfg.tol) {
    if (it >= cfg.max_iter) {
      throw SolverError("solve_eps: no convergence, residual " + std::to_string(res), res,
                        it);
    }
    for (std::size_t i = 0; i < n; ++i) {
      lower[i] = -slope[i] * d2.lower[i];
      diag[i] = 1.0 / dt - slope[i] * d2.diag[i];
      upper[i] = -slope[i] * d2.upper[i];
    }
    step = f;
    solve_tridiagonal(lower, diag, upper, step);
    for (std::size_t i = 0; i < n; ++i) sol.u[i] += step[i];
    ++it;
    const double next = residual();
    if (!std::isfinite(next)) {
      throw SolverError("solve_eps: non-finite residual", res, it);
    }
    dt = std::min(cfg.dt_max * eps * eps, dt * std::max(res / next, 0.5));
    res = next;
  }
  sol.residual = res;
  sol.iterations = it;
  return sol;
}

std::vector<double> HomogenizedSolution::sample(std::span<const double> x) const {
  std::vector<double> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [this](double v) { return (*this)(v); });
  return out;
}

HomogenizedSolution solve_homogenized(const std::function<double(double)>& hbar,
                                      double rhs) {
  double lo = -1e6;
  double hi = 1e6;
  if (!(hbar(lo) <= rhs && rhs <= hbar(hi))) {
    throw ValidationError("solve_homogenized: rhs outside the range of hbar");
  }
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (hbar(mid) < rhs ? lo : hi) = mid;
  }
  return {0.5 * (lo + hi)};
}

}  // namespace homog
