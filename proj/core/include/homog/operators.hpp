#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>

#include "homog/coefficient.hpp"
#include "homog/symmat.hpp"

namespace homog {

/// a(y1) tr Q + b(y1) lambda_max^+(Q), d = 2. Stripes: both coefficients
/// depend on y1 only.
struct StripesPucci {
  PiecewiseCoeff a{1.0};
  PiecewiseCoeff b{0.0};
};

/// max{a0(y), a0(y) + a1(y)} (A : Q) + h with constant positive-definite A.
struct MaxTwoLinear {
  int dim = 1;
  PiecewiseCoeff a0{1.0};
  PiecewiseCoeff a1{0.0};
  SymMat A = SymMat::scalar(1.0);
  double h = 0.0;
};

/// a Q + b(y) (Q^+)^2 - c in one dimension.
struct Quad1D {
  double a = 1.0;
  PiecewiseCoeff b{0.0};
  double c = 0.0;
  /// Upper end of the control interval [0, alpha_cap]. Unset means the
  /// interval is unbounded above; routes that discretize controls resolve it
  /// with `resolved_alpha_cap`.
  std::optional<double> alpha_cap;
};

using OperatorSpec = std::variant<StripesPucci, MaxTwoLinear, Quad1D>;

enum class OperatorKind { StripesPucci, MaxTwoLinear, Quad1D };

OperatorKind kind_of(const OperatorSpec& op);
std::string_view kind_name(OperatorKind kind);
int dimension(const OperatorSpec& op);

/// Throws ValidationError if coefficient signs, dimensions or layouts are
/// inconsistent with the operator family.
void validate(const OperatorSpec& op);

/// A control for the linearizations L_alpha.
///
/// StripesPucci: `value` s in [-1, 1] selects the unit direction
/// v = (sqrt|s|, sign(s) sqrt(1 - |s|)), so |s| = cos^2(theta); `zero_vector`
/// selects v = 0, the control that realizes the positive part of
/// lambda_max. MaxTwoLinear: mixing weight in [0, 1]. Quad1D: slope in
/// [0, alpha_cap].
struct Control {
  double value = 0.0;
  bool zero_vector = false;

  static Control zero() { return {0.0, true}; }
};

struct ControlRange {
  double lo;
  double hi;
};

/// Admissible interval for `Control::value`.
ControlRange control_range(const OperatorSpec& op);

/// Resolved cap for Quad1D: the configured value, or max(2|Q|, 1).
double resolved_alpha_cap(const Quad1D& op, double q_scale);

/// Returns `op` with a Quad1D control cap filled in from `q_scale` when it
/// is unset; other kinds are returned unchanged.
OperatorSpec with_resolved_cap(OperatorSpec op, double q_scale);

/// L_alpha(Q, y) = A(y, alpha) : Q + h(y, alpha).
struct LinearPart {
  SymMat diffusion;
  double constant = 0.0;

  double operator()(const SymMat& q) const {
    return contract(diffusion, q) + constant;
  }
};

/// The operator with its coefficients frozen at one point y.
class LocalOperator {
 public:
  struct Stripes {
    double a, b;
  };
  struct MaxTwo {
    double a0, a1;
    SymMat A;
    double h;
  };
  struct Quad {
    double a, b, c;
  };

  LocalOperator(const OperatorSpec& op, std::array<double, 2> y);
  explicit LocalOperator(Stripes s) : form_(s) {}
  explicit LocalOperator(MaxTwo m) : form_(m) {}
  explicit LocalOperator(Quad q) : form_(q) {}

  double operator()(const SymMat& q) const;
  LinearPart linearization(const Control& control) const;
  Control argmax(const SymMat& q) const;

  /// Slope dH/dQ for one-dimensional forms, taking the right derivative at
  /// kinks.
  double slope_1d(double q) const;

  const std::variant<Stripes, MaxTwo, Quad>& form() const { return form_; }

 private:
  std::variant<Stripes, MaxTwo, Quad> form_;
};

/// H(Q, y).
double eval_hjb(const OperatorSpec& op, const SymMat& q,
                std::array<double, 2> y);
/// L_alpha(Q, y); throws if the control is not admissible.
double eval_linearized(const OperatorSpec& op, const SymMat& q,
                       std::array<double, 2> y, const Control& control);
/// A(y, alpha) and h(y, alpha) for the given control.
LinearPart linearization(const OperatorSpec& op, std::array<double, 2> y,
                         const Control& control);
/// A control attaining the supremum defining H(Q, y).
Control argmax_control(const OperatorSpec& op, const SymMat& q,
                       std::array<double, 2> y);

/// Uniform ellipticity constants (lambda, Lambda) over all pieces and
/// admissible controls. Quad1D requires a resolved control cap.
std::pair<double, double> ellipticity_bounds(const OperatorSpec& op);

/// The direction matrix v v^T for a StripesPucci control.
SymMat stripes_direction(const Control& control);

}  // namespace homog
