#include "homog/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "homog/errors.hpp"

namespace homog {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// b0 of a coefficient with two equal pieces {0, b0} (either order).
double two_piece_level(const PiecewiseCoeff& b, const char* who) {
  const auto& bp = b.breakpoints();
  const bool halves = bp.size() == 2 && bp[0] == 0.0 && bp[1] == 0.5 &&
                      !b.depends_on_y2();
  if (halves) {
    const double v0 = b.value(0);
    const double v1 = b.value(1);
    const double b0 = std::max(v0, v1);
    if (std::min(v0, v1) == 0.0 && b0 > 0.0) return b0;
  }
  throw ValidationError(std::string(who) +
                        ": b must have two equal pieces with values {0, b0}, b0 > 0");
}

void require_unit_a(const StripesPucci& op) {
  if (!op.a.is_constant() || op.a.values().front() != 1.0) {
    throw ValidationError("stripes formula: requires a == 1");
  }
}

/// Linearized y1-y1 coefficient c(y1) for a constant control.
PiecewiseCoeff y1_coefficient(const OperatorSpec& op, const Control& control) {
  return std::visit(
      overloaded{
          [&](const StripesPucci& s) {
            const double t = control.zero_vector ? 0.0 : std::abs(control.value);
            return s.a.scaled_sum(1.0, s.b, t);
          },
          [&](const MaxTwoLinear& m) {
            if (m.a0.depends_on_y2() || m.a1.depends_on_y2()) {
              throw ValidationError(
                  "invariant measure: coefficients must depend on y1 only");
            }
            return m.a0.scaled_sum(m.A.q11, m.a1, control.value * m.A.q11);
          },
          [&](const Quad1D& q) {
            return PiecewiseCoeff(q.a).scaled_sum(1.0, q.b, 2.0 * control.value);
          },
      },
      op);
}

std::size_t locate(const std::vector<double>& bp, double y) {
  double w = y - std::floor(y);
  if (w >= 1.0) w = 0.0;
  auto it = std::upper_bound(bp.begin(), bp.end(), w);
  if (it == bp.begin()) return bp.size() - 1;
  return static_cast<std::size_t>(it - bp.begin()) - 1;
}

double width(const std::vector<double>& bp, std::size_t i) {
  const double hi = i + 1 < bp.size() ? bp[i + 1] : bp.front() + 1.0;
  return hi - bp[i];
}

}  // namespace

double harmonic_mean(const PiecewiseCoeff& coeff) {
  double inv = 0.0;
  for (std::size_t i = 0; i < coeff.pieces_y1(); ++i) {
    for (std::size_t j = 0; j < coeff.pieces_y2(); ++j) {
      const double v = coeff.value(i, j);
      if (!(v > 0.0)) {
        throw ValidationError("harmonic_mean: coefficient must be positive");
      }
      inv += coeff.width_y1(i) * coeff.width_y2(j) / v;
    }
  }
  return 1.0 / inv;
}

double arithmetic_mean(const PiecewiseCoeff& coeff) {
  double sum = 0.0;
  for (std::size_t i = 0; i < coeff.pieces_y1(); ++i) {
    for (std::size_t j = 0; j < coeff.pieces_y2(); ++j) {
      sum += coeff.width_y1(i) * coeff.width_y2(j) * coeff.value(i, j);
    }
  }
  return sum;
}

double AnalyticMeasure::operator()(double y1) const {
  return density[locate(breakpoints, y1)];
}

double AnalyticMeasure::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < density.size(); ++i) {
    s += width(breakpoints, i) * density[i];
  }
  return s;
}

double hbar_max_two_linear(const MaxTwoLinear& op, const SymMat& q) {
  validate(op);
  if (q.dim != op.dim) throw ValidationError("hbar_max_two_linear: dimension mismatch");
  const double aq = contract(op.A, q);
  const double low = harmonic_mean(op.a0);
  const double high = harmonic_mean(op.a0.scaled_sum(1.0, op.a1, 1.0));
  return std::max(low * aq, high * aq) + op.h;
}

double hbar_quad1d(const Quad1D& op, double q) {
  const double b0 = two_piece_level(op.b, "hbar_quad1d");
  const double a = op.a;
  const double qp = positive_part(q);
  if (qp == 0.0) return a * q - op.c;
  return a * (q + qp) - op.c + a * a / b0 -
         std::sqrt(a * a * a * (a + 2.0 * b0 * qp)) / b0;
}

double quad1d_alpha_star(const Quad1D& op, double q) {
  const double b0 = two_piece_level(op.b, "quad1d_alpha_star");
  const double a = op.a;
  const double qp = positive_part(q);
  if (qp == 0.0) return 0.0;
  return (-a + std::sqrt(a * (a + 2.0 * b0 * qp))) / b0;
}

double quad1d_lbar(const Quad1D& op, double q, double alpha) {
  const double b0 = two_piece_level(op.b, "quad1d_lbar");
  if (!(alpha >= 0.0)) throw ValidationError("quad1d_lbar: alpha must be >= 0");
  const double a = op.a;
  const double c = op.c;
  const double stiff = a + 2.0 * b0 * alpha;
  return a * stiff / (a + b0 * alpha) *
         (q - 0.5 * (c / a + (b0 * alpha * alpha + c) / stiff));
}

double stripes_lbar_t(const StripesPucci& op, const SymMat& q, double t) {
  require_unit_a(op);
  const double b0 = two_piece_level(op.b, "stripes_lbar_t");
  if (q.dim != 2) throw ValidationError("stripes_lbar_t: Q must be 2x2");
  if (!(t >= 0.0 && t <= 1.0)) throw ValidationError("stripes_lbar_t: t outside [0,1]");
  // sqrt(t - t^2) is exactly 0 at both endpoints.
  const double root = (t == 0.0 || t == 1.0) ? 0.0 : std::sqrt(t - t * t);
  return q.trace() +
         b0 / (2.0 + b0 * t) * (q.q22 + t * (q.q11 - q.q22) + 2.0 * q.q12 * root);
}

StripesBound stripes_lower_bound(const StripesPucci& op, const SymMat& q) {
  require_unit_a(op);
  two_piece_level(op.b, "stripes_lower_bound");
  if (q.dim != 2) throw ValidationError("stripes_lower_bound: Q must be 2x2");
  if (q.negative_semidefinite()) {
    return {harmonic_mean(op.a) * q.trace(), 0.0, 0};
  }
  // The reflection y2 -> -y2 leaves the stripes invariant, so the mirrored
  // direction family is admissible too; it amounts to using |q12|.
  SymMat qa = q;
  qa.q12 = std::abs(q.q12);
  auto f = [&](double t) { return stripes_lbar_t(op, qa, t); };

  constexpr double inv_phi = 0.6180339887498948482;
  double lo = 0.0;
  double hi = 1.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  double best_t = 0.5 * (lo + hi);
  double best = f(best_t);
  for (double t : {0.0, 1.0, x1, x2}) {
    const double v = f(t);
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  return {best, best_t, q.q12 < 0.0 ? -1 : 1};
}

double hbar_stripes_lower_bound(const StripesPucci& op, const SymMat& q) {
  return stripes_lower_bound(op, q).value;
}

AnalyticMeasure invariant_measure_for_control(const OperatorSpec& op,
                                              const Control& control) {
  const PiecewiseCoeff c = y1_coefficient(op, control);
  if (c.min() <= 0.0) {
    throw ValidationError("invariant measure: linearized coefficient must be > 0");
  }
  const double hm = harmonic_mean(c);
  AnalyticMeasure m;
  m.breakpoints = c.breakpoints();
  m.density.reserve(c.pieces_y1());
  for (std::size_t i = 0; i < c.pieces_y1(); ++i) m.density.push_back(hm / c.value(i));
  return m;
}

double lbar_constant_control(const OperatorSpec& op, const SymMat& q,
                             const Control& control) {
  if (const auto* m = std::get_if<MaxTwoLinear>(&op)) {
    const auto c = m->a0.scaled_sum(1.0, m->a1, control.value);
    return harmonic_mean(c) * contract(m->A, q) + m->h;
  }
  const AnalyticMeasure p = invariant_measure_for_control(op, control);
  double total = 0.0;
  for (std::size_t i = 0; i < p.density.size(); ++i) {
    const double y1 = detail::piece_midpoint(p.breakpoints, i);
    total += width(p.breakpoints, i) * p.density[i] *
             eval_linearized(op, q, {y1, 0.0}, control);
  }
  return total;
}

double hbar_formula(const OperatorSpec& op, const SymMat& q) {
  return std::visit(
      overloaded{
          [&](const StripesPucci& s) { return hbar_stripes_lower_bound(s, q); },
          [&](const MaxTwoLinear& m) { return hbar_max_two_linear(m, q); },
          [&](const Quad1D& d) {
            if (q.dim != 1) throw ValidationError("hbar_quad1d: Q must be 1x1");
            return hbar_quad1d(d, q.q11);
          },
      },
      op);
}

double operator_constant(const OperatorSpec& op) {
  return std::visit(overloaded{
                        [](const StripesPucci&) { return 0.0; },
                        [](const MaxTwoLinear& m) { return m.h; },
                        [](const Quad1D& d) { return -d.c; },
                    },
                    op);
}

}  // namespace homog
