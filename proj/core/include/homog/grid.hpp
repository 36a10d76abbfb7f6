#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "homog/symmat.hpp"

namespace homog {

/// Uniform grid on the d-torus with nodes at cell midpoints (i + 1/2) / n.
/// Node index is i1 * n + i2 in 2D.
class PeriodicGrid {
 public:
  PeriodicGrid(int dim, int n);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double spacing() const { return 1.0 / n_; }
  std::size_t size() const;

  std::array<double, 2> node(std::size_t k) const;
  std::size_t index(int i1, int i2 = 0) const;
  int wrap(int i) const { return ((i % n_) + n_) % n_; }

 private:
  int dim_;
  int n_;
};

/// One row of the periodic Hessian stencil: D^2 u at node k is
/// sum over entries of weight * u[node] per matrix component.
struct StencilEntry {
  std::size_t node;
  double w11;
  double w12;
  double w22;
};

/// Stencil of the centered second differences at node k (5 entries in 1D
/// collapsed to 3, 9 in 2D). Weights include the 1/h^2 factor.
std::vector<StencilEntry> hessian_stencil(const PeriodicGrid& grid,
                                          std::size_t k);

/// Centered second differences with periodic wraparound. The cross term is
/// (u(+,+) + u(-,-) - u(+,-) - u(-,+)) / (4 h^2).
std::vector<SymMat> second_differences(std::span<const double> u,
                                       const PeriodicGrid& grid);

}  // namespace homog
