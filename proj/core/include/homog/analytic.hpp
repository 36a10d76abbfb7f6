#pragma once

#include <vector>

#include "homog/coefficient.hpp"
#include "homog/operators.hpp"
#include "homog/symmat.hpp"

namespace homog {

/// (integral of 1 / c over the torus)^-1, exact from piece areas.
double harmonic_mean(const PiecewiseCoeff& coeff);
double arithmetic_mean(const PiecewiseCoeff& coeff);

/// A piecewise-constant probability density on [0, 1) along y1.
struct AnalyticMeasure {
  std::vector<double> breakpoints;
  std::vector<double> density;

  double operator()(double y1) const;
  double integral() const;
};

/// max{HM(a0) A:Q, HM(a0 + a1) A:Q} + h.
double hbar_max_two_linear(const MaxTwoLinear& op, const SymMat& q);

/// Requires b with two equal pieces {0, b0}, b0 > 0 (either order).
double hbar_quad1d(const Quad1D& op, double q);
double quad1d_alpha_star(const Quad1D& op, double q);
/// Homogenized constant-control linearization for the two-piece Quad1D.
double quad1d_lbar(const Quad1D& op, double q, double alpha);

/// Homogenized linearization for the direction t = cos^2(theta) on the
/// two-piece stripes operator with a = 1 and b in {0, b0}:
///   tr Q + b0 / (2 + b0 t) (q22 + t (q11 - q22) + 2 q12 sqrt(t - t^2)).
double stripes_lbar_t(const StripesPucci& op, const SymMat& q, double t);

struct StripesBound {
  double value;
  /// Maximizing t in [0, 1] and the sign of the direction's off-diagonal
  /// entry; t is meaningless on the negative semidefinite branch.
  double t;
  int sign;
};

/// Negative semidefinite Q: HM(a) tr Q. Otherwise the supremum of L_t over
/// all unit directions, found by golden-section search over t plus both
/// endpoints. The mirror direction (sign of the off-diagonal entry) is
/// included, so the result depends on |q12| only.
StripesBound stripes_lower_bound(const StripesPucci& op, const SymMat& q);
double hbar_stripes_lower_bound(const StripesPucci& op, const SymMat& q);

/// HM(c) / c where c is the y1-y1 diffusion coefficient of the constant
/// control's linearization. The operator's coefficients must depend on y1
/// only.
AnalyticMeasure invariant_measure_for_control(const OperatorSpec& op,
                                              const Control& control);

/// Homogenized value of the linear operator L_control: its average against
/// the invariant measure of the same control.
double lbar_constant_control(const OperatorSpec& op, const SymMat& q,
                             const Control& control);

/// Closed-form route: exact for MaxTwoLinear and the two-piece Quad1D; the
/// constant-direction lower bound for StripesPucci.
double hbar_formula(const OperatorSpec& op, const SymMat& q);

/// Constant added to H-bar by the operator (h, -c, or 0).
double operator_constant(const OperatorSpec& op);

}  // namespace homog
