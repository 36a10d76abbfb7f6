#include "homog/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "homog/errors.hpp"

namespace homog {

namespace {

double wrap01(double y) {
  double w = y - std::floor(y);
  // floor can leave w == 1 for tiny negative y.
  return w >= 1.0 ? 0.0 : w;
}

void check_breakpoints(const std::vector<double>& bp, const char* axis) {
  if (bp.empty()) {
    throw ValidationError(std::string("coefficient: empty breakpoints on ") +
                          axis);
  }
  for (std::size_t i = 0; i < bp.size(); ++i) {
    if (!(bp[i] >= 0.0 && bp[i] < 1.0)) {
      throw ValidationError(std::string("coefficient: breakpoint outside [0,1) on ") +
                            axis);
    }
    if (i > 0 && !(bp[i] > bp[i - 1])) {
      throw ValidationError(
          std::string("coefficient: breakpoints must be strictly increasing on ") +
          axis);
    }
  }
}

}  // namespace

namespace detail {

std::vector<double> merge_breakpoints(const std::vector<double>& a,
                                      const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-15; }),
            out.end());
  return out;
}

double piece_midpoint(const std::vector<double>& bp, std::size_t i) {
  const double lo = bp[i];
  const double hi = i + 1 < bp.size() ? bp[i + 1] : bp.front() + 1.0;
  return wrap01(0.5 * (lo + hi));
}

}  // namespace detail

PiecewiseCoeff::PiecewiseCoeff(double constant)
    : bp1_{0.0}, bp2_{0.0}, values_{constant} {
  validate();
}

PiecewiseCoeff::PiecewiseCoeff(std::vector<double> breakpoints,
                               std::vector<double> values)
    : bp1_(std::move(breakpoints)), bp2_{0.0}, values_(std::move(values)) {
  validate();
}

PiecewiseCoeff::PiecewiseCoeff(std::vector<double> breakpoints,
                               std::vector<double> breakpoints_y2,
                               std::vector<double> values)
    : bp1_(std::move(breakpoints)),
      bp2_(std::move(breakpoints_y2)),
      values_(std::move(values)) {
  validate();
}

PiecewiseCoeff PiecewiseCoeff::alternating(std::span<const double> cycle,
                                           std::size_t pieces) {
  if (cycle.empty() || pieces == 0) {
    throw ValidationError("coefficient: alternating pattern needs values and pieces");
  }
  std::vector<double> bp(pieces);
  std::vector<double> vals(pieces);
  for (std::size_t i = 0; i < pieces; ++i) {
    bp[i] = static_cast<double>(i) / static_cast<double>(pieces);
    vals[i] = cycle[i % cycle.size()];
  }
  return PiecewiseCoeff(std::move(bp), std::move(vals));
}

PiecewiseCoeff PiecewiseCoeff::two_halves(double first, double second) {
  return PiecewiseCoeff({0.0, 0.5}, {first, second});
}

void PiecewiseCoeff::validate() const {
  check_breakpoints(bp1_, "y1");
  check_breakpoints(bp2_, "y2");
  if (values_.size() != bp1_.size() * bp2_.size()) {
    throw ValidationError("coefficient: expected " +
                          std::to_string(bp1_.size() * bp2_.size()) +
                          " values, got " + std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("coefficient: non-finite value");
  }
}

std::size_t PiecewiseCoeff::locate(const std::vector<double>& bp, double y) {
  const double w = wrap01(y);
  auto it = std::upper_bound(bp.begin(), bp.end(), w);
  if (it == bp.begin()) return bp.size() - 1;  // before b_0: wrapped last piece
  return static_cast<std::size_t>(it - bp.begin()) - 1;
}

double PiecewiseCoeff::width(const std::vector<double>& bp, std::size_t i) {
  const double hi = i + 1 < bp.size() ? bp[i + 1] : bp.front() + 1.0;
  return hi - bp[i];
}

double PiecewiseCoeff::operator()(double y1, double y2) const {
  const std::size_t i = locate(bp1_, y1);
  const std::size_t j = bp2_.size() == 1 ? 0 : locate(bp2_, y2);
  return values_[i * bp2_.size() + j];
}

bool PiecewiseCoeff::depends_on_y2() const {
  if (bp2_.size() == 1) return false;
  for (std::size_t i = 0; i < bp1_.size(); ++i) {
    for (std::size_t j = 1; j < bp2_.size(); ++j) {
      if (value(i, j) != value(i, 0)) return true;
    }
  }
  return false;
}

bool PiecewiseCoeff::is_constant() const {
  return std::all_of(values_.begin(), values_.end(),
                     [&](double v) { return v == values_.front(); });
}

double PiecewiseCoeff::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double PiecewiseCoeff::max() const {
  return *std::max_element(values_.begin(), values_.end());
}

PiecewiseCoeff PiecewiseCoeff::scaled_sum(double s, const PiecewiseCoeff& other,
                                          double t) const {
  return combine(other, [s, t](double x, double y) { return s * x + t * y; });
}

PiecewiseCoeff PiecewiseCoeff::map(double (*f)(double)) const {
  std::vector<double> vals(values_.size());
  std::transform(values_.begin(), values_.end(), vals.begin(), f);
  return PiecewiseCoeff(bp1_, bp2_, std::move(vals));
}

}  // namespace homog
