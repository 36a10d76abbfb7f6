#include "homog/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "homog/errors.hpp"

namespace homog {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(const SymMat& q) {
  if (!q.is_finite()) throw ValidationError("operator: non-finite Q");
}

void require_dim(const OperatorSpec& op, const SymMat& q) {
  if (q.dim != dimension(op)) {
    throw ValidationError("operator: Q has dimension " + std::to_string(q.dim) +
                          ", operator expects " + std::to_string(dimension(op)));
  }
  require_finite(q);
}

void require_y1_only(const PiecewiseCoeff& c, const char* what) {
  if (c.depends_on_y2()) {
    throw ValidationError(std::string("operator: ") + what +
                          " must depend on y1 only");
  }
}

}  // namespace

OperatorKind kind_of(const OperatorSpec& op) {
  return std::visit(overloaded{
                        [](const StripesPucci&) { return OperatorKind::StripesPucci; },
                        [](const MaxTwoLinear&) { return OperatorKind::MaxTwoLinear; },
                        [](const Quad1D&) { return OperatorKind::Quad1D; },
                    },
                    op);
}

std::string_view kind_name(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::StripesPucci:
      return "stripes_pucci";
    case OperatorKind::MaxTwoLinear:
      return "max_two_linear";
    case OperatorKind::Quad1D:
      return "quad1d";
  }
  return "unknown";
}

int dimension(const OperatorSpec& op) {
  return std::visit(overloaded{
                        [](const StripesPucci&) { return 2; },
                        [](const MaxTwoLinear& m) { return m.dim; },
                        [](const Quad1D&) { return 1; },
                    },
                    op);
}

void validate(const OperatorSpec& op) {
  std::visit(
      overloaded{
          [](const StripesPucci& s) {
            require_y1_only(s.a, "stripes coefficient a");
            require_y1_only(s.b, "stripes coefficient b");
            if (s.a.min() <= 0.0) throw ValidationError("stripes: a must be > 0");
            if (s.b.min() < 0.0) throw ValidationError("stripes: b must be >= 0");
          },
          [](const MaxTwoLinear& m) {
            if (m.dim != 1 && m.dim != 2) {
              throw ValidationError("max_two_linear: dim must be 1 or 2");
            }
            if (m.A.dim != m.dim) {
              throw ValidationError("max_two_linear: A dimension mismatch");
            }
            if (!m.A.is_finite() || m.A.lambda_min() <= 0.0) {
              throw ValidationError("max_two_linear: A must be positive definite");
            }
            if (m.dim == 1) {
              require_y1_only(m.a0, "a0");
              require_y1_only(m.a1, "a1");
            }
            if (m.a0.min() <= 0.0) throw ValidationError("max_two_linear: a0 must be > 0");
            if (m.a1.min() < 0.0) throw ValidationError("max_two_linear: a1 must be >= 0");
            if (!std::isfinite(m.h)) throw ValidationError("max_two_linear: h not finite");
          },
          [](const Quad1D& q) {
            require_y1_only(q.b, "quad1d b");
            if (!(q.a > 0.0) || !std::isfinite(q.a)) {
              throw ValidationError("quad1d: a must be > 0");
            }
            if (q.b.min() < 0.0) throw ValidationError("quad1d: b must be >= 0");
            if (!std::isfinite(q.c)) throw ValidationError("quad1d: c not finite");
            if (q.alpha_cap && !(*q.alpha_cap > 0.0)) {
              throw ValidationError("quad1d: alpha_cap must be > 0");
            }
          },
      },
      op);
}

ControlRange control_range(const OperatorSpec& op) {
  return std::visit(
      overloaded{
          [](const StripesPucci&) { return ControlRange{-1.0, 1.0}; },
          [](const MaxTwoLinear&) { return ControlRange{0.0, 1.0}; },
          [](const Quad1D& q) {
            return ControlRange{0.0, q.alpha_cap.value_or(
                                         std::numeric_limits<double>::infinity())};
          },
      },
      op);
}

double resolved_alpha_cap(const Quad1D& op, double q_scale) {
  return op.alpha_cap.value_or(std::max(2.0 * std::abs(q_scale), 1.0));
}

OperatorSpec with_resolved_cap(OperatorSpec op, double q_scale) {
  if (auto* q = std::get_if<Quad1D>(&op)) {
    q->alpha_cap = resolved_alpha_cap(*q, q_scale);
  }
  return op;
}

SymMat stripes_direction(const Control& control) {
  if (control.zero_vector) return SymMat::make(0.0, 0.0, 0.0);
  const double t = std::min(std::abs(control.value), 1.0);
  const double off = std::sqrt(t * (1.0 - t));
  return SymMat::make(t, control.value < 0.0 ? -off : off, 1.0 - t);
}

LocalOperator::LocalOperator(const OperatorSpec& op, std::array<double, 2> y)
    : form_(std::visit(
          overloaded{
              [&](const StripesPucci& s) -> std::variant<Stripes, MaxTwo, Quad> {
                return Stripes{s.a(y[0]), s.b(y[0])};
              },
              [&](const MaxTwoLinear& m) -> std::variant<Stripes, MaxTwo, Quad> {
                return MaxTwo{m.a0(y[0], y[1]), m.a1(y[0], y[1]), m.A, m.h};
              },
              [&](const Quad1D& q) -> std::variant<Stripes, MaxTwo, Quad> {
                return Quad{q.a, q.b(y[0]), q.c};
              },
          },
          op)) {}

double LocalOperator::operator()(const SymMat& q) const {
  return std::visit(
      overloaded{
          [&](const Stripes& s) {
            return s.a * q.trace() + s.b * positive_part(q.lambda_max());
          },
          [&](const MaxTwo& m) {
            const double aq = contract(m.A, q);
            return std::max(m.a0 * aq, (m.a0 + m.a1) * aq) + m.h;
          },
          [&](const Quad& d) {
            const double qp = positive_part(q.q11);
            return d.a * q.q11 + d.b * qp * qp - d.c;
          },
      },
      form_);
}

LinearPart LocalOperator::linearization(const Control& control) const {
  return std::visit(
      overloaded{
          [&](const Stripes& s) {
            return LinearPart{s.a * SymMat::identity(2) +
                                  s.b * stripes_direction(control),
                              0.0};
          },
          [&](const MaxTwo& m) {
            return LinearPart{(m.a0 + control.value * m.a1) * m.A, m.h};
          },
          [&](const Quad& d) {
            const double al = control.value;
            return LinearPart{SymMat::scalar(d.a + 2.0 * d.b * al),
                              -(d.b * al * al + d.c)};
          },
      },
      form_);
}

Control LocalOperator::argmax(const SymMat& q) const {
  return std::visit(
      overloaded{
          [&](const Stripes&) {
            if (q.lambda_max() <= 0.0) return Control::zero();
            const auto v = q.top_eigenvector();
            const double t = v[0] * v[0];
            const bool negative = v[1] < 0.0 && t > 0.0 && t < 1.0;
            return Control{negative ? -t : t, false};
          },
          [&](const MaxTwo& m) {
            return Control{contract(m.A, q) >= 0.0 ? 1.0 : 0.0, false};
          },
          [&](const Quad&) { return Control{positive_part(q.q11), false}; },
      },
      form_);
}

double LocalOperator::slope_1d(double q) const {
  return std::visit(
      overloaded{
          [](const Stripes&) -> double {
            throw ValidationError("slope_1d: stripes operator is two-dimensional");
          },
          [&](const MaxTwo& m) -> double {
            if (m.A.dim != 1) {
              throw ValidationError("slope_1d: operator is two-dimensional");
            }
            return m.A.q11 * (m.A.q11 * q >= 0.0 ? m.a0 + m.a1 : m.a0);
          },
          [&](const Quad& d) { return d.a + 2.0 * d.b * positive_part(q); },
      },
      form_);
}

double eval_hjb(const OperatorSpec& op, const SymMat& q, std::array<double, 2> y) {
  require_dim(op, q);
  return LocalOperator(op, y)(q);
}

LinearPart linearization(const OperatorSpec& op, std::array<double, 2> y,
                         const Control& control) {
  const ControlRange r = control_range(op);
  if (control.zero_vector && kind_of(op) != OperatorKind::StripesPucci) {
    throw ValidationError("control: zero vector only applies to stripes_pucci");
  }
  if (!control.zero_vector &&
      (!(control.value >= r.lo - 1e-12) || !(control.value <= r.hi + 1e-12))) {
    throw ValidationError("control: value " + std::to_string(control.value) +
                          " outside admissible interval");
  }
  return LocalOperator(op, y).linearization(control);
}

double eval_linearized(const OperatorSpec& op, const SymMat& q,
                       std::array<double, 2> y, const Control& control) {
  require_dim(op, q);
  return linearization(op, y, control)(q);
}

Control argmax_control(const OperatorSpec& op, const SymMat& q,
                       std::array<double, 2> y) {
  require_dim(op, q);
  Control c = LocalOperator(op, y).argmax(q);
  if (const auto* quad = std::get_if<Quad1D>(&op); quad && quad->alpha_cap) {
    c.value = std::min(c.value, *quad->alpha_cap);
  }
  return c;
}

std::pair<double, double> ellipticity_bounds(const OperatorSpec& op) {
  validate(op);
  auto bounds = std::visit(
      overloaded{
          [](const StripesPucci& s) {
            const auto top = s.a.scaled_sum(1.0, s.b, 1.0);
            return std::pair{s.a.min(), top.max()};
          },
          [](const MaxTwoLinear& m) {
            const auto top = m.a0.scaled_sum(1.0, m.a1, 1.0);
            return std::pair{m.a0.min() * m.A.lambda_min(),
                             top.max() * m.A.lambda_max()};
          },
          [](const Quad1D& q) {
            if (!q.alpha_cap) {
              throw ValidationError("quad1d: ellipticity bounds need alpha_cap");
            }
            return std::pair{q.a, q.a + 2.0 * q.b.max() * *q.alpha_cap};
          },
      },
      op);
  if (!(bounds.first > 0.0)) {
    throw ValidationError("operator: not uniformly elliptic");
  }
  return bounds;
}

}  // namespace homog
