#include <doctest.h>

#include <cmath>
#include <random>

#include "homog/errors.hpp"
#include "homog/operators.hpp"

using namespace homog;

namespace {

StripesPucci stripes() { return {PiecewiseCoeff(1.0), PiecewiseCoeff::two_halves(0.0, 2.0)}; }

MaxTwoLinear max_two() {
  return {1, PiecewiseCoeff::two_halves(1.0, 0.5), PiecewiseCoeff::two_halves(1.5, 2.5),
          SymMat::scalar(1.0), 1.0};
}

Quad1D quad() { return {1.0, PiecewiseCoeff::two_halves(0.0, 1.0), 1.0, std::nullopt}; }

SymMat random_q(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  return dim == 1 ? SymMat::scalar(u(rng)) : SymMat::make(u(rng), u(rng), u(rng));
}

}  // namespace

TEST_CASE("kind helpers") {
  CHECK(kind_name(kind_of(stripes())) == "stripes_pucci");
  CHECK(kind_name(kind_of(max_two())) == "max_two_linear");
  CHECK(kind_name(kind_of(quad())) == "quad1d");
  CHECK(dimension(stripes()) == 2);
  CHECK(dimension(quad()) == 1);
}

TEST_CASE("stripes value is a tr Q + b lambda_max^+") {
  const SymMat q = SymMat::diag(1.0, -2.0);
  CHECK(eval_hjb(stripes(), q, {0.25, 0.0}) == doctest::Approx(-1.0));
  CHECK(eval_hjb(stripes(), q, {0.75, 0.4}) == doctest::Approx(1.0));
  CHECK(eval_hjb(stripes(), SymMat::diag(-1.0, -2.0), {0.75, 0.0}) == doctest::Approx(-3.0));
}

TEST_CASE("max-two-linear value") {
  CHECK(eval_hjb(max_two(), SymMat::scalar(-1.0), {0.2, 0.0}) == doctest::Approx(0.0));
  CHECK(eval_hjb(max_two(), SymMat::scalar(2.0), {0.2, 0.0}) == doctest::Approx(6.0));
  CHECK(eval_hjb(max_two(), SymMat::scalar(2.0), {0.7, 0.0}) == doctest::Approx(7.0));
  CHECK(eval_hjb(max_two(), SymMat::scalar(0.0), {0.7, 0.0}) == doctest::Approx(1.0));
}

TEST_CASE("quadratic value") {
  CHECK(eval_hjb(quad(), SymMat::scalar(2.0), {0.7, 0.0}) == doctest::Approx(5.0));
  CHECK(eval_hjb(quad(), SymMat::scalar(2.0), {0.2, 0.0}) == doctest::Approx(1.0));
  CHECK(eval_hjb(quad(), SymMat::scalar(-1.0), {0.7, 0.0}) == doctest::Approx(-2.0));
}

TEST_CASE("argmax control attains the supremum") {
  std::mt19937_64 rng(11);
  for (const OperatorSpec& op : {OperatorSpec(stripes()), OperatorSpec(max_two()),
                                 OperatorSpec(quad())}) {
    for (int k = 0; k < 50; ++k) {
      const SymMat q = random_q(rng, dimension(op));
      const std::array<double, 2> y{std::uniform_real_distribution<double>(0, 1)(rng), 0.3};
      const Control c = argmax_control(with_resolved_cap(op, 3.0), q, y);
      CHECK(eval_linearized(with_resolved_cap(op, 3.0), q, y, c) ==
            doctest::Approx(eval_hjb(op, q, y)).epsilon(1e-12));
    }
  }
}

TEST_CASE("every admissible linearization lies below H") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const OperatorSpec ops[] = {stripes(), max_two(), with_resolved_cap(quad(), 3.0)};
  for (const OperatorSpec& op : ops) {
    const ControlRange r = control_range(op);
    for (int k = 0; k < 200; ++k) {
      const SymMat q = random_q(rng, dimension(op));
      const std::array<double, 2> y{u(rng), u(rng)};
      const Control c{r.lo + u(rng) * (r.hi - r.lo), false};
      CHECK(eval_linearized(op, q, y, c) <= eval_hjb(op, q, y) + 1e-12);
    }
  }
  CHECK(eval_linearized(stripes(), SymMat::diag(-1, -1), {0.7, 0}, Control::zero()) ==
        doctest::Approx(-2.0));
}

TEST_CASE("convexity and monotonicity in Q") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const OperatorSpec& op : {OperatorSpec(stripes()), OperatorSpec(max_two()),
                                 OperatorSpec(quad())}) {
    const int d = dimension(op);
    for (int k = 0; k < 200; ++k) {
      const std::array<double, 2> y{u(rng), u(rng)};
      const SymMat p = random_q(rng, d), q = random_q(rng, d);
      const double t = u(rng);
      const double mid = eval_hjb(op, t * p + (1 - t) * q, y);
      CHECK(mid <= t * eval_hjb(op, p, y) + (1 - t) * eval_hjb(op, q, y) + 1e-10);
      SymMat psd = random_q(rng, d);
      psd = d == 1 ? SymMat::scalar(std::abs(psd.q11))
                   : SymMat::make(psd.q11 * psd.q11 + psd.q12 * psd.q12,
                                  psd.q12 * (psd.q11 + psd.q22),
                                  psd.q12 * psd.q12 + psd.q22 * psd.q22);
      CHECK(eval_hjb(op, p + psd, y) >= eval_hjb(op, p, y) - 1e-12);
    }
  }
}

TEST_CASE("ellipticity bounds") {
  Quad1D q{1.0, PiecewiseCoeff::two_halves(0.0, 1.0), 0.0, 4.0};
  const auto [lo, hi] = ellipticity_bounds(q);
  CHECK(lo == 1.0);
  CHECK(hi == 9.0);
  const auto [slo, shi] = ellipticity_bounds(stripes());
  CHECK(slo == 1.0);
  CHECK(shi == 3.0);
  const auto [mlo, mhi] = ellipticity_bounds(max_two());
  CHECK(mlo == 0.5);
  CHECK(mhi == 3.0);
  CHECK_THROWS_AS(ellipticity_bounds(quad()), ValidationError);
}

TEST_CASE("control cap resolution") {
  CHECK(resolved_alpha_cap(quad(), 4.0) == 8.0);
  CHECK(resolved_alpha_cap(quad(), 0.1) == 1.0);
  Quad1D capped = quad();
  capped.alpha_cap = 10.0;
  CHECK(resolved_alpha_cap(capped, 4.0) == 10.0);
  CHECK(control_range(with_resolved_cap(quad(), -3.0)).hi == 6.0);
  CHECK(std::isinf(control_range(quad()).hi));
  CHECK(argmax_control(capped, SymMat::scalar(20.0), {0.7, 0}).value == 10.0);
}

TEST_CASE("stripes directions are unit rank-one matrices") {
  for (double s : {-1.0, -0.3, 0.0, 0.5, 1.0}) {
    const SymMat v = stripes_direction({s, false});
    CHECK(v.trace() == doctest::Approx(1.0));
    CHECK(v.q11 * v.q22 - v.q12 * v.q12 == doctest::Approx(0.0));
    CHECK(v.q11 == doctest::Approx(std::abs(s)));
  }
  const SymMat z = stripes_direction(Control::zero());
  CHECK(z.trace() == 0.0);
}

TEST_CASE("invalid operators and inputs") {
  CHECK_THROWS_AS(validate(StripesPucci{PiecewiseCoeff(-1.0), PiecewiseCoeff(0.0)}),
                  ValidationError);
  CHECK_THROWS_AS(validate(StripesPucci{PiecewiseCoeff(1.0), PiecewiseCoeff(-0.5)}),
                  ValidationError);
  MaxTwoLinear m = max_two();
  m.A = SymMat::scalar(-1.0);
  CHECK_THROWS_AS(validate(m), ValidationError);
  m = max_two();
  m.dim = 2;
  CHECK_THROWS_AS(validate(m), ValidationError);
  Quad1D q = quad();
  q.a = 0.0;
  CHECK_THROWS_AS(validate(q), ValidationError);
  CHECK_THROWS_AS(eval_hjb(quad(), SymMat::diag(1, 1), {0, 0}), ValidationError);
  CHECK_THROWS_AS(eval_linearized(max_two(), SymMat::scalar(1), {0, 0}, {1.5, false}),
                  ValidationError);
  CHECK_THROWS_AS(eval_linearized(max_two(), SymMat::scalar(1), {0, 0}, Control::zero()),
                  ValidationError);
}
