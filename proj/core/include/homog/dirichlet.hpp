#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "homog/operators.hpp"

namespace homog {

enum class Arrangement { Periodic, Random };
std::string_view arrangement_name(Arrangement a);

/// Cell layout of an eps-scale medium on [0, 1]: label 1 or 2 per cell,
/// selecting the constituent operator.
struct Medium {
  double eps = 0.5;
  Arrangement arrangement = Arrangement::Periodic;
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> labels;

  std::size_t cells() const { return labels.size(); }
};

/// Periodic media alternate 1, 2, 1, 2, ...; random media draw a fair coin
/// per cell from a 64-bit Mersenne twister seeded with `seed`.
Medium build_medium(double eps, Arrangement arrangement,
                    std::uint64_t seed = 0);

/// One node per cell at the midpoints (i + 1/2) eps; the boundary values
/// u(0) = u(1) = 0 sit half a cell away from the outer nodes.
std::vector<double> interval_nodes(std::size_t cells);

/// Three-point second difference on the interval grid, with the
/// non-uniform stencil at the two outer nodes. Exact for quadratics.
std::vector<double> interval_second_differences(std::span<const double> u,
                                                double eps);

struct DirichletConfig {
  double tol = 1e-10;
  long max_iter = 20'000;
  /// Initial pseudo-time step in units of eps^2; grown by switched evolution
  /// relaxation as the residual drops.
  double dt0 = 1.0;
  double dt_max = 1e14;
};

struct DirichletSolution {
  std::vector<double> x;
  std::vector<double> u;
  double residual = 0.0;
  long iterations = 0;
};

/// Solves H^eps(D^2 u, x) = rhs at every node with u = 0 on the boundary by
/// linearly implicit pseudo-time stepping of u_t = H^eps(D^2 u, x) - rhs.
/// Constituents must be one-dimensional.
DirichletSolution solve_eps(const LocalOperator& first,
                            const LocalOperator& second, const Medium& medium,
                            double rhs = 1.0, const DirichletConfig& cfg = {});

/// u-bar(x) = (r / 2) x (x - 1) where hbar(r) = rhs.
struct HomogenizedSolution {
  double r = 0.0;
  double operator()(double x) const { return 0.5 * r * x * (x - 1.0); }
  std::vector<double> sample(std::span<const double> x) const;
};

/// Bisection on an increasing `hbar` to |dr| <= 1e-13. Throws
/// ValidationError if rhs is not in the range of hbar on [-1e6, 1e6].
HomogenizedSolution solve_homogenized(
    const std::function<double(double)>& hbar, double rhs = 1.0);

}  // namespace homog
