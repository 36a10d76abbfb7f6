#pragma once

#include <cstddef>
#include <vector>

namespace homog::lp {

/// maximize c^T x  subject to  A x = b,  x >= 0.
/// A is stored column-wise (compressed sparse column).
struct StandardFormLp {
  std::size_t rows = 0;
  std::vector<double> objective;
  std::vector<double> rhs;
  std::vector<std::size_t> col_start{0};
  std::vector<std::size_t> row_index;
  std::vector<double> value;

  std::size_t cols() const { return objective.size(); }
  void add_column(double cost, const std::vector<std::size_t>& rows_of_col,
                  const std::vector<double>& values_of_col);
  /// Infinity norm of A x - b.
  double residual(const std::vector<double>& x) const;
  double evaluate(const std::vector<double>& x) const;
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-10;
  double pivot_tol = 1e-7;
  long max_iterations = 200'000;
  /// Rebuild the basis inverse from scratch every so many pivots.
  int refactor_interval = 64;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_limit = 50;
};

struct Solution {
  Status status = Status::IterationLimit;
  std::vector<double> x;
  double objective = 0.0;
  long iterations = 0;
  /// Rows found linearly dependent after phase one.
  std::size_t redundant_rows = 0;
  bool used_crash = false;
};

/// Two-phase revised simplex with an explicit dense basis inverse. Pricing is
/// Dantzig's rule, with Bland's rule after a run of degenerate pivots.
/// Deterministic for identical inputs.
/// `crash` optionally names one structural column per row as a starting
/// basis. It is used when nonsingular and primal feasible; otherwise the
/// solver starts from the artificial basis.
Solution solve(const StandardFormLp& lp, const SimplexOptions& opts = {},
               const std::vector<std::size_t>& crash = {});

}  // namespace homog::lp
