#include "homog/symmat.hpp"

#include <algorithm>
#include <cmath>

namespace homog {

namespace {

double half_gap(const SymMat& q) {
  const double d = 0.5 * (q.q11 - q.q22);
  return std::hypot(d, q.q12);
}

}  // namespace

SymMat SymMat::from_eigen(double l1, double l2, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return make(c * c * l1 + s * s * l2, c * s * (l2 - l1), s * s * l1 + c * c * l2);
}

double SymMat::lambda_max() const {
  if (dim == 1) return q11;
  return 0.5 * (q11 + q22) + half_gap(*this);
}

double SymMat::lambda_min() const {
  if (dim == 1) return q11;
  return 0.5 * (q11 + q22) - half_gap(*this);
}

std::array<double, 2> SymMat::top_eigenvector() const {
  if (dim == 1) return {1.0, 0.0};
  const double r = half_gap(*this);
  if (r == 0.0) return {1.0, 0.0};
  // cos(2 theta) = (q11 - q22) / (2 r), sin(2 theta) = q12 / r.
  const double cos2 = 0.5 * (q11 - q22) / r;
  const double c = std::sqrt(std::max(0.0, 0.5 * (1.0 + cos2)));
  const double s = std::sqrt(std::max(0.0, 0.5 * (1.0 - cos2)));
  return {c, q12 < 0.0 ? -s : s};
}

bool SymMat::is_finite() const {
  return std::isfinite(q11) && std::isfinite(q12) && std::isfinite(q22);
}

SymMat& SymMat::operator+=(const SymMat& o) {
  q11 += o.q11;
  q12 += o.q12;
  q22 += o.q22;
  return *this;
}

SymMat& SymMat::operator-=(const SymMat& o) {
  q11 -= o.q11;
  q12 -= o.q12;
  q22 -= o.q22;
  return *this;
}

SymMat& SymMat::operator*=(double s) {
  q11 *= s;
  q12 *= s;
  q22 *= s;
  return *this;
}

SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
SymMat operator-(SymMat a, const SymMat& b) { return a -= b; }
SymMat operator*(double s, SymMat a) { return a *= s; }
SymMat operator*(SymMat a, double s) { return a *= s; }

double contract(const SymMat& a, const SymMat& q) {
  if (a.dim == 1) return a.q11 * q.q11;
  return a.q11 * q.q11 + 2.0 * a.q12 * q.q12 + a.q22 * q.q22;
}

bool loewner_le(const SymMat& a, const SymMat& b, double tol) {
  return (b - a).lambda_min() >= -tol;
}

}  // namespace homog
