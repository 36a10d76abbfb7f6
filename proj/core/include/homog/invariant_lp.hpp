#pragma once

#include <cstddef>
#include <vector>

#include "homog/cell_pde.hpp"
#include "homog/grid.hpp"
#include "homog/lp_solver.hpp"
#include "homog/operators.hpp"

namespace homog {

/// Uniform discretization of the admissible control interval, endpoints
/// included. StripesPucci grids carry one extra control: the zero vector.
struct ControlGrid {
  std::vector<Control> points;

  static ControlGrid uniform(const OperatorSpec& op, std::size_t count);
  std::size_t size() const { return points.size(); }
};

/// Default N_alpha: 2 for MaxTwoLinear (objective affine in alpha), 41
/// otherwise.
std::size_t default_control_count(const OperatorSpec& op);

/// Invariant-measure LP on grid x controls. Variable (i, j) has index
/// i * controls.size() + j. Row 0 is the normalization; row 1 + k is the
/// discrete adjoint equation at node k, scaled by h^2. All n^d adjoint rows
/// are kept here; `solve_lp` drops the last one.
struct LpProblem {
  PeriodicGrid grid{1, 4};
  ControlGrid controls;
  lp::StandardFormLp program;

  std::size_t nodes() const { return grid.size(); }
  std::size_t variable(std::size_t node, std::size_t control) const {
    return node * controls.size() + control;
  }
};

struct DiscreteMeasure {
  PeriodicGrid grid{1, 4};
  ControlGrid controls;
  std::vector<double> weights;

  double total() const;
  double min_weight() const;
  /// Node-wise sum over controls.
  std::vector<double> y_marginal() const;
};

struct LpOutcome {
  DiscreteMeasure measure;
  double objective = 0.0;
  /// Infinity norm of the (scaled) adjoint constraints over all nodes.
  double adjoint_residual = 0.0;
  double normalization_error = 0.0;
  long iterations = 0;
};

LpProblem assemble_lp(const OperatorSpec& op, const SymMat& q,
                      const PeriodicGrid& grid, const ControlGrid& controls);

/// Solves the LP, clips weights in [-1e-12, 0) to zero and renormalizes.
/// Throws SolverError on infeasibility, unboundedness or iteration limit,
/// or if the returned measure violates its contract by more than `tol`.
/// The simplex starts from the basis of the first control used everywhere.
LpOutcome solve_lp(const LpProblem& problem, double tol = 1e-9);
/// Warm start: `policy` gives one control per node; the simplex starts from
/// the basis of its nearest grid controls when that basis is feasible, and
/// from the constant-control basis otherwise.
LpOutcome solve_lp(const LpProblem& problem, const std::vector<Control>& policy,
                   double tol = 1e-9);

/// Infinity norm of the scaled adjoint constraints at `weights`.
double adjoint_residual(const LpProblem& problem,
                        const std::vector<double>& weights);

struct LpRoute {
  HomogResult result;
  LpOutcome outcome;
};

/// n_alpha = 0 selects `default_control_count`.
LpRoute hbar_lp_full(const OperatorSpec& op, const SymMat& q, int n,
                     std::size_t n_alpha = 0, double tol = 1e-9);
HomogResult hbar_lp(const OperatorSpec& op, const SymMat& q, int n,
                    std::size_t n_alpha = 0, double tol = 1e-9);

}  // namespace homog
