#pragma once

#include <array>

namespace homog {

/// Symmetric d x d matrix, d in {1, 2}. Only the upper triangle is stored;
/// q12 and q22 are zero for d = 1.
struct SymMat {
  int dim = 1;
  double q11 = 0.0;
  double q12 = 0.0;
  double q22 = 0.0;

  static SymMat scalar(double q) { return {1, q, 0.0, 0.0}; }
  static SymMat make(double q11, double q12, double q22) {
    return {2, q11, q12, q22};
  }
  static SymMat diag(double l1, double l2) { return {2, l1, 0.0, l2}; }
  static SymMat identity(int dim) {
    return dim == 1 ? scalar(1.0) : diag(1.0, 1.0);
  }
  /// R_phi^T diag(l1, l2) R_phi with R_phi = [[cos, -sin], [sin, cos]].
  static SymMat from_eigen(double l1, double l2, double phi);

  double trace() const { return dim == 1 ? q11 : q11 + q22; }
  double lambda_max() const;
  double lambda_min() const;
  /// Top eigenvector as (cos theta, sin theta) with theta in (-pi/2, pi/2].
  /// Ties resolve to e1.
  std::array<double, 2> top_eigenvector() const;
  bool negative_semidefinite() const { return lambda_max() <= 0.0; }
  bool is_finite() const;

  SymMat& operator+=(const SymMat& o);
  SymMat& operator-=(const SymMat& o);
  SymMat& operator*=(double s);
};

SymMat operator+(SymMat a, const SymMat& b);
SymMat operator-(SymMat a, const SymMat& b);
SymMat operator*(double s, SymMat a);
SymMat operator*(SymMat a, double s);

/// Frobenius contraction A : Q = sum_ij A_ij Q_ij.
double contract(const SymMat& a, const SymMat& q);

/// Loewner order a <= b (b - a positive semidefinite).
bool loewner_le(const SymMat& a, const SymMat& b, double tol = 0.0);

inline double positive_part(double t) { return t > 0.0 ? t : 0.0; }

}  // namespace homog
