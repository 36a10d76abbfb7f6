#pragma once

#include <stdexcept>
#include <string>

namespace homog {

/// Bad input: malformed operator, out-of-range control, dimension mismatch.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative solver failed (non-convergence, blow-up, infeasible LP).
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_residual = -1.0,
              long iterations = 0)
      : std::runtime_error(what),
        best_residual_(best_residual),
        iterations_(iterations) {}

  double best_residual() const noexcept { return best_residual_; }
  long iterations() const noexcept { return iterations_; }

 private:
  double best_residual_;
  long iterations_;
};

}  // namespace homog
