#pragma once

#include <string_view>
#include <vector>

#include "homog/grid.hpp"
#include "homog/operators.hpp"

namespace homog {

enum class Method { Pde, Lp, Formula };
std::string_view method_name(Method m);

struct HomogResult {
  double hbar = 0.0;
  /// PDE: max - min of H(Q + D^2 u, .) over nodes. LP: adjoint-constraint
  /// residual. Formula: 0.
  double residual = 0.0;
  long iterations = 0;
  Method method = Method::Formula;
  int grid_n = 0;
};

struct CellConfig {
  /// Pseudo-time step; <= 0 selects 0.9 h^2 / (2 d Lambda).
  double dt = 0.0;
  /// <= 0 selects 1e-9 in 1D and 1e-7 in 2D.
  double tol = 0.0;
  long max_iter = 10'000'000;
  /// Over-relaxation factor applied to dt (1 = plain Euler).
  double relaxation = 1.0;
};

/// Discrete corrector u^Q, kept at zero mean.
struct CorrectorField {
  std::vector<double> values;
  double mean() const;
};

struct CellSolution {
  HomogResult result;
  CorrectorField corrector;
  /// H(Q + D^2 u, y) at every node at exit.
  std::vector<double> hamiltonian;
};

double default_cell_tol(int dim);
double stable_time_step(const OperatorSpec& op, const SymMat& q,
                        const PeriodicGrid& grid);

/// Explicit pseudo-time iteration
///   u <- u + dt (H(Q + D^2 u, y) - mean_y H(Q + D^2 u, y)),
/// re-centred to zero mean, until max - min of H over nodes is below tol.
/// Throws SolverError on blow-up or when max_iter is exhausted.
CellSolution solve_cell(const OperatorSpec& op, const SymMat& q,
                        const PeriodicGrid& grid, const CellConfig& cfg = {},
                        std::vector<double> initial_guess = {});

double hbar_pde(const OperatorSpec& op, const SymMat& q, int n,
                const CellConfig& cfg = {});

}  // namespace homog
