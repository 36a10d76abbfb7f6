#include "homog/grid.hpp"

#include "homog/errors.hpp"

namespace homog {

PeriodicGrid::PeriodicGrid(int dim, int n) : dim_(dim), n_(n) {
  if (dim != 1 && dim != 2) throw ValidationError("grid: dim must be 1 or 2");
  if (n < 4) throw ValidationError("grid: need at least 4 points per dimension");
}

std::size_t PeriodicGrid::size() const {
  return dim_ == 1 ? static_cast<std::size_t>(n_)
                   : static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
}

std::array<double, 2> PeriodicGrid::node(std::size_t k) const {
  const double h = spacing();
  if (dim_ == 1) return {(static_cast<double>(k) + 0.5) * h, 0.0};
  const auto i1 = k / static_cast<std::size_t>(n_);
  const auto i2 = k % static_cast<std::size_t>(n_);
  return {(static_cast<double>(i1) + 0.5) * h, (static_cast<double>(i2) + 0.5) * h};
}

std::size_t PeriodicGrid::index(int i1, int i2) const {
  if (dim_ == 1) return static_cast<std::size_t>(wrap(i1));
  return static_cast<std::size_t>(wrap(i1)) * static_cast<std::size_t>(n_) +
         static_cast<std::size_t>(wrap(i2));
}

std::vector<StencilEntry> hessian_stencil(const PeriodicGrid& grid, std::size_t k) {
  const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
  const int n = grid.n();
  if (grid.dim() == 1) {
    const int i = static_cast<int>(k);
    return {{grid.index(i - 1), inv_h2, 0.0, 0.0},
            {grid.index(i), -2.0 * inv_h2, 0.0, 0.0},
            {grid.index(i + 1), inv_h2, 0.0, 0.0}};
  }
  const int i1 = static_cast<int>(k) / n;
  const int i2 = static_cast<int>(k) % n;
  const double c = 0.25 * inv_h2;
  return {
      {grid.index(i1, i2), -2.0 * inv_h2, 0.0, -2.0 * inv_h2},
      {grid.index(i1 - 1, i2), inv_h2, 0.0, 0.0},
      {grid.index(i1 + 1, i2), inv_h2, 0.0, 0.0},
      {grid.index(i1, i2 - 1), 0.0, 0.0, inv_h2},
      {grid.index(i1, i2 + 1), 0.0, 0.0, inv_h2},
      {grid.index(i1 + 1, i2 + 1), 0.0, c, 0.0},
      {grid.index(i1 - 1, i2 - 1), 0.0, c, 0.0},
      {grid.index(i1 + 1, i2 - 1), 0.0, -c, 0.0},
      {grid.index(i1 - 1, i2 + 1), 0.0, -c, 0.0},
  };
}

std::vector<SymMat> second_differences(std::span<const double> u,
                                       const PeriodicGrid& grid) {
  if (u.size() != grid.size()) {
    throw ValidationError("second_differences: field size does not match grid");
  }
  const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
  const int n = grid.n();
  std::vector<SymMat> out(grid.size());
  if (grid.dim() == 1) {
    for (int i = 0; i < n; ++i) {
      const double d = u[grid.index(i - 1)] - 2.0 * u[i] + u[grid.index(i + 1)];
      out[i] = SymMat::scalar(d * inv_h2);
    }
    return out;
  }
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const double c = u[grid.index(i1, i2)];
      const double d11 = u[grid.index(i1 - 1, i2)] - 2.0 * c + u[grid.index(i1 + 1, i2)];
      const double d22 = u[grid.index(i1, i2 - 1)] - 2.0 * c + u[grid.index(i1, i2 + 1)];
      const double d12 = u[grid.index(i1 + 1, i2 + 1)] + u[grid.index(i1 - 1, i2 - 1)] -
                         u[grid.index(i1 + 1, i2 - 1)] - u[grid.index(i1 - 1, i2 + 1)];
      out[grid.index(i1, i2)] = SymMat::make(d11 * inv_h2, 0.25 * d12 * inv_h2, d22 * inv_h2);
    }
  }
  return out;
}

}  // namespace homog
