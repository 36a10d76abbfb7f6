#include "homog/cell_pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "homog/errors.hpp"

namespace homog {

namespace {

void recentre(std::vector<double>& u) {
  const double m = std::accumulate(u.begin(), u.end(), 0.0) / static_cast<double>(u.size());
  for (double& v : u) v -= m;
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Pde:
      return "pde";
    case Method::Lp:
      return "lp";
    case Method::Formula:
      return "formula";
  }
  return "unknown";
}

double CorrectorField::mean() const {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double default_cell_tol(int dim) { return dim == 1 ? 1e-9 : 1e-7; }

double stable_time_step(const OperatorSpec& op, const SymMat& q,
                        const PeriodicGrid& grid) {
  const double scale = q.dim == 1 ? std::abs(q.q11) : std::abs(q.lambda_max());
  const auto [lo, hi] = ellipticity_bounds(with_resolved_cap(op, scale));
  (void)lo;
  const double h = grid.spacing();
  return 0.9 * h * h / (2.0 * grid.dim() * hi);
}

CellSolution solve_cell(const OperatorSpec& op, const SymMat& q,
                        const PeriodicGrid& grid, const CellConfig& cfg,
                        std::vector<double> initial_guess) {
  validate(op);
  if (q.dim != dimension(op) || grid.dim() != dimension(op)) {
    throw ValidationError("solve_cell: dimension mismatch");
  }
  if (!q.is_finite()) throw ValidationError("solve_cell: non-finite Q");
  const double dt =
      (cfg.dt > 0.0 ? cfg.dt : stable_time_step(op, q, grid)) * cfg.relaxation;
  const double tol = cfg.tol > 0.0 ? cfg.tol : default_cell_tol(grid.dim());

  const std::size_t nodes = grid.size();
  std::vector<LocalOperator> local;
  local.reserve(nodes);
  for (std::size_t k = 0; k < nodes; ++k) local.emplace_back(op, grid.node(k));

  std::vector<double> u = std::move(initial_guess);
  if (u.empty()) u.assign(nodes, 0.0);
  if (u.size() != nodes) throw ValidationError("solve_cell: initial guess size mismatch");
  recentre(u);

  std::vector<double> ham(nodes);
  double best = std::numeric_limits<double>::infinity();
  for (long it = 0; it <= cfg.max_iter; ++it) {
    const auto d2 = second_differences(u, grid);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    for (std::size_t k = 0; k < nodes; ++k) {
      const double v = local[k](q + d2[k]);
      ham[k] = v;
      sum += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double mean = sum / static_cast<double>(nodes);
    const double residual = hi - lo;
    if (!std::isfinite(residual) || !std::isfinite(mean)) {
      throw SolverError("solve_cell: iteration blew up (NaN/Inf)", best, it);
    }
    best = std::min(best, residual);
    if (residual <= tol) {
      CellSolution sol;
      sol.result = {mean, residual, it, Method::Pde, grid.n()};
      sol.corrector.values = std::move(u);
      sol.hamiltonian = std::move(ham);
      return sol;
    }
    for (std::size_t k = 0; k < nodes; ++k) u[k] += dt * (ham[k] - mean);
    recentre(u);
  }
  throw SolverError("solve_cell: no convergence within max_iter", best, cfg.max_iter);
}

double hbar_pde(const OperatorSpec& op, const SymMat& q, int n, const CellConfig& cfg) {
  return solve_cell(op, q, PeriodicGrid(dimension(op), n), cfg).result.hbar;
}

}  // namespace homog
