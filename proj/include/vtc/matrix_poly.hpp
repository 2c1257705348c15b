#pragma once

#include <vector>

#include "vtc/matcore.hpp"

namespace vtc::poly {

/// Matrix polynomial with coefficients in ascending degree order.
struct MatrixPoly {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::vector<Matrix> coef;  // coef[k] multiplies z^k

  MatrixPoly() = default;
  MatrixPoly(Eigen::Index r, Eigen::Index c) : rows(r), cols(c) {}

  static MatrixPoly constant(const Matrix& M);
  static MatrixPoly zero(Eigen::Index r, Eigen::Index c);

  int degree() const { return static_cast<int>(coef.size()) - 1; }
  bool is_zero() const { return coef.empty(); }

  /// Coefficient of z^k (zero matrix if k exceeds the stored degree).
  Matrix coefficient(int k) const;

  Matrix eval(Complex z) const;

  /// Drop trailing coefficients below tol in Frobenius norm.
  void trim(double tol = 0.0);
};

MatrixPoly operator+(const MatrixPoly& a, const MatrixPoly& b);
MatrixPoly operator-(const MatrixPoly& a, const MatrixPoly& b);
MatrixPoly operator*(const MatrixPoly& a, const MatrixPoly& b);
MatrixPoly operator*(const Matrix& a, const MatrixPoly& b);
MatrixPoly operator*(const MatrixPoly& a, const Matrix& b);
MatrixPoly operator*(Complex a, const MatrixPoly& b);

/// Scalar determinant polynomial by Leibniz expansion; intended for small
/// block sizes (p <= 3 in this project).
std::vector<Complex> det_poly(const MatrixPoly& P);

/// Roots of a scalar polynomial (ascending coefficients) via the companion
/// matrix of the monic normalization. Leading zeros are trimmed first.
std::vector<Complex> poly_roots(const std::vector<Complex>& c, double trim_tol = 1e-12);

/// Coefficients E_m of the expansion D(z)^{-1} = z^{-d} sum_m E_m z^{-m},
/// where d = deg D and the leading coefficient of D is invertible.
/// Returns E_0..E_{terms-1}.
std::vector<Matrix> inverse_series_at_infinity(const MatrixPoly& D, int terms);

}  // namespace vtc::poly
