#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace homog {

/// Period-1 piecewise-constant coefficient on the torus.
///
/// Pieces along y1 are delimited by `breakpoints` (sorted, in [0, 1)); piece k
/// covers [b_k, b_{k+1}) and the last piece wraps around to b_0 + 1. An
/// optional second partition along y2 turns the field into a checkerboard
/// with one value per (y1-piece, y2-piece) pair. Evaluation is
/// right-continuous at every breakpoint.
class PiecewiseCoeff {
 public:
  PiecewiseCoeff() : PiecewiseCoeff(1.0) {}
  explicit PiecewiseCoeff(double constant);
  PiecewiseCoeff(std::vector<double> breakpoints, std::vector<double> values);
  /// Checkerboard: values[i * breakpoints_y2.size() + j] for y1-piece i and
  /// y2-piece j.
  PiecewiseCoeff(std::vector<double> breakpoints,
                 std::vector<double> breakpoints_y2,
                 std::vector<double> values);

  /// `pieces` equal pieces along y1 cycling through `cycle`.
  static PiecewiseCoeff alternating(std::span<const double> cycle,
                                    std::size_t pieces);
  static PiecewiseCoeff two_halves(double first, double second);

  double operator()(double y1, double y2 = 0.0) const;

  std::size_t pieces_y1() const { return bp1_.size(); }
  std::size_t pieces_y2() const { return bp2_.size(); }
  bool depends_on_y2() const;
  bool is_constant() const;

  const std::vector<double>& breakpoints() const { return bp1_; }
  const std::vector<double>& breakpoints_y2() const { return bp2_; }
  const std::vector<double>& values() const { return values_; }

  double value(std::size_t i1, std::size_t i2 = 0) const {
    return values_[i1 * bp2_.size() + i2];
  }
  double width_y1(std::size_t i) const { return width(bp1_, i); }
  double width_y2(std::size_t j) const { return width(bp2_, j); }

  double min() const;
  double max() const;

  /// Pointwise f(this, other) on the common refinement of both partitions.
  template <class F>
  PiecewiseCoeff combine(const PiecewiseCoeff& other, F&& f) const;

  PiecewiseCoeff scaled_sum(double s, const PiecewiseCoeff& other,
                            double t) const;
  PiecewiseCoeff map(double (*f)(double)) const;

 private:
  static double width(const std::vector<double>& bp, std::size_t i);
  static std::size_t locate(const std::vector<double>& bp, double y);
  void validate() const;

  std::vector<double> bp1_;
  std::vector<double> bp2_;
  std::vector<double> values_;
};

namespace detail {
std::vector<double> merge_breakpoints(const std::vector<double>& a,
                                      const std::vector<double>& b);
double piece_midpoint(const std::vector<double>& bp, std::size_t i);
}  // namespace detail

template <class F>
PiecewiseCoeff PiecewiseCoeff::combine(const PiecewiseCoeff& other,
                                       F&& f) const {
  auto m1 = detail::merge_breakpoints(bp1_, other.bp1_);
  auto m2 = detail::merge_breakpoints(bp2_, other.bp2_);
  std::vector<double> vals;
  vals.reserve(m1.size() * m2.size());
  for (std::size_t i = 0; i < m1.size(); ++i) {
    const double y1 = detail::piece_midpoint(m1, i);
    for (std::size_t j = 0; j < m2.size(); ++j) {
      const double y2 = detail::piece_midpoint(m2, j);
      vals.push_back(f((*this)(y1, y2), other(y1, y2)));
    }
  }
  return PiecewiseCoeff(std::move(m1), std::move(m2), std::move(vals));
}

}  // namespace homog
