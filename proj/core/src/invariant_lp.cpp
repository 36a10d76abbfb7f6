#include "homog/invariant_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "homog/errors.hpp"

namespace homog {

ControlGrid ControlGrid::uniform(const OperatorSpec& op, std::size_t count) {
  if (count < 2) throw ValidationError("control grid: need at least 2 points");
  const ControlRange r = control_range(op);
  if (!std::isfinite(r.hi)) {
    throw ValidationError("control grid: control interval must be bounded (set alpha_cap)");
  }
  ControlGrid g;
  g.points.reserve(count + 1);
  for (std::size_t k = 0; k < count; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(count - 1);
    g.points.push_back({k + 1 == count ? r.hi : r.lo + s * (r.hi - r.lo), false});
  }
  if (kind_of(op) == OperatorKind::StripesPucci) g.points.push_back(Control::zero());
  return g;
}

std::size_t default_control_count(const OperatorSpec& op) {
  return kind_of(op) == OperatorKind::MaxTwoLinear ? 2 : 41;
}

double DiscreteMeasure::total() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double DiscreteMeasure::min_weight() const {
  return weights.empty() ? 0.0 : *std::min_element(weights.begin(), weights.end());
}

std::vector<double> DiscreteMeasure::y_marginal() const {
  std::vector<double> out(grid.size(), 0.0);
  const std::size_t nc = controls.size();
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < nc; ++j) out[i] += weights[i * nc + j];
  }
  return out;
}

LpProblem assemble_lp(const OperatorSpec& op, const SymMat& q, const PeriodicGrid& grid,
                      const ControlGrid& controls) {
  validate(op);
  if (q.dim != dimension(op) || grid.dim() != dimension(op)) {
    throw ValidationError("assemble_lp: dimension mismatch");
  }
  const std::size_t nodes = grid.size();
  const double h2 = grid.spacing() * grid.spacing();
  LpProblem p{grid, controls, {}};
  p.program.rows = 1 + nodes;
  p.program.rhs.assign(1 + nodes, 0.0);
  p.program.rhs[0] = 1.0;

  std::vector<std::size_t> rows;
  std::vector<double> vals;
  std::map<std::size_t, double> acc;
  for (std::size_t i = 0; i < nodes; ++i) {
    const LocalOperator local(op, grid.node(i));
    const auto stencil = hessian_stencil(grid, i);
    for (const Control& ctrl : controls.points) {
      const LinearPart lin = local.linearization(ctrl);
      const SymMat& a = lin.diffusion;
      acc.clear();
      for (const StencilEntry& e : stencil) {
        const double w = grid.dim() == 1
                             ? a.q11 * e.w11
                             : a.q11 * e.w11 + 2.0 * a.q12 * e.w12 + a.q22 * e.w22;
        acc[1 + e.node] += h2 * w;
      }
      rows.assign(1, 0);
      vals.assign(1, 1.0);
      for (const auto& [row, v] : acc) {
        rows.push_back(row);
        vals.push_back(v);
      }
      p.program.add_column(lin(q), rows, vals);
    }
  }
  return p;
}

double adjoint_residual(const LpProblem& problem, const std::vector<double>& weights) {
  const auto& lp = problem.program;
  std::vector<double> r(lp.rows, 0.0);
  for (std::size_t j = 0; j < lp.cols(); ++j) {
    for (std::size_t k = lp.col_start[j]; k < lp.col_start[j + 1]; ++k) {
      r[lp.row_index[k]] += lp.value[k] * weights[j];
    }
  }
  double worst = 0.0;
  for (std::size_t i = 1; i < r.size(); ++i) worst = std::max(worst, std::abs(r[i]));
  return worst;
}

namespace {

std::size_t nearest_control(const ControlGrid& grid, const Control& c) {
  std::size_t best = 0;
  double dist = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const Control& g = grid.points[j];
    if (g.zero_vector != c.zero_vector) continue;
    const double d = std::abs(g.value - c.value);
    if (d < dist) {
      dist = d;
      best = j;
    }
  }
  return best;
}

}  // namespace

LpOutcome solve_lp(const LpProblem& problem, double tol) {
  return solve_lp(problem, {}, tol);
}

LpOutcome solve_lp(const LpProblem& problem, const std::vector<Control>& policy, double tol) {
  const auto& full = problem.program;
  // The adjoint block annihilates constants, so its last row is redundant.
  const std::size_t dropped = full.rows - 1;
  lp::StandardFormLp reduced;
  reduced.rows = full.rows - 1;
  reduced.rhs.assign(full.rhs.begin(), full.rhs.end() - 1);
  std::vector<std::size_t> rows;
  std::vector<double> vals;
  for (std::size_t j = 0; j < full.cols(); ++j) {
    rows.clear();
    vals.clear();
    for (std::size_t k = full.col_start[j]; k < full.col_start[j + 1]; ++k) {
      if (full.row_index[k] == dropped) continue;
      rows.push_back(full.row_index[k]);
      vals.push_back(full.value[k]);
    }
    reduced.add_column(full.objective[j], rows, vals);
  }

  // A constant control gives a nonsingular, nonnegative starting basis.
  std::vector<std::size_t> constant;
  for (std::size_t i = 0; i < problem.nodes(); ++i) constant.push_back(problem.variable(i, 0));
  std::vector<std::size_t> crash = constant;
  if (policy.size() == problem.nodes()) {
    for (std::size_t i = 0; i < policy.size(); ++i) {
      crash[i] = problem.variable(i, nearest_control(problem.controls, policy[i]));
    }
  }
  lp::Solution sol = lp::solve(reduced, {}, crash);
  if (!sol.used_crash && crash != constant) sol = lp::solve(reduced, {}, constant);
  switch (sol.status) {
    case lp::Status::Optimal:
      break;
    case lp::Status::Infeasible:
      throw SolverError("solve_lp: infeasible (discretization bug?)", -1.0, sol.iterations);
    case lp::Status::Unbounded:
      throw SolverError("solve_lp: unbounded", -1.0, sol.iterations);
    case lp::Status::IterationLimit:
      throw SolverError("solve_lp: iteration limit", -1.0, sol.iterations);
  }

  LpOutcome out;
  out.measure = {problem.grid, problem.controls, sol.x};
  auto& w = out.measure.weights;
  for (double& v : w) {
    if (v < -tol) {
      throw SolverError("solve_lp: negative weight " + std::to_string(v), -1.0,
                        sol.iterations);
    }
    if (v < 0.0) v = 0.0;
  }
  const double total = out.measure.total();
  out.normalization_error = std::abs(total - 1.0);
  for (double& v : w) v /= total;
  out.adjoint_residual = adjoint_residual(problem, w);
  out.objective = full.evaluate(w);
  out.iterations = sol.iterations;
  if (out.adjoint_residual > tol || out.normalization_error > tol) {
    throw SolverError("solve_lp: returned measure violates constraints",
                      std::max(out.adjoint_residual, out.normalization_error),
                      sol.iterations);
  }
  return out;
}

LpRoute hbar_lp_full(const OperatorSpec& op, const SymMat& q, int n, std::size_t n_alpha,
                     double tol) {
  const OperatorSpec resolved = with_resolved_cap(op, q.dim == 1 ? q.q11 : q.lambda_max());
  const PeriodicGrid grid(dimension(resolved), n);
  const ControlGrid controls = ControlGrid::uniform(
      resolved, n_alpha == 0 ? default_control_count(resolved) : n_alpha);
  const LpProblem problem = assemble_lp(resolved, q, grid, controls);
  std::vector<Control> policy;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    policy.push_back(argmax_control(resolved, q, grid.node(i)));
  }
  LpRoute route;
  route.outcome = solve_lp(problem, policy, tol);
  route.result = {route.outcome.objective, route.outcome.adjoint_residual,
                  route.outcome.iterations, Method::Lp, n};
  return route;
}

HomogResult hbar_lp(const OperatorSpec& op, const SymMat& q, int n, std::size_t n_alpha,
                    double tol) {
  return hbar_lp_full(op, q, n, n_alpha, tol).result;
}

}  // namespace homog
