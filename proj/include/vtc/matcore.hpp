#pragma once

#include <Eigen/Dense>
#include <complex>

#include "vtc/errors.hpp"

namespace vtc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermTol = 1e-10;

namespace matcore {

/// Identity of size m.
Matrix eye(Eigen::Index m);

/// ||M - M*||_F / (1 + ||M||_F).
double hermiticity_residual(const Matrix& M);

bool is_hermitian(const Matrix& M, double tol = kHermTol);

struct PdCheck {
  bool positive = false;
  double min_pivot = 0.0;  // smallest Cholesky pivot encountered
};

/// Hermitian test plus Cholesky with explicit pivots. A non-square input
/// throws; a non-Hermitian or non-PD input yields positive = false.
PdCheck is_positive_definite(const Matrix& M, double herm_tol = kHermTol);

/// Throws PositivityError unless M is Hermitian positive definite.
void require_pd(const Matrix& M, const std::string& what);

/// Unique Hermitian PD square root.
Matrix pd_sqrt(const Matrix& M);

/// Unique Hermitian PD root of M^{-1}.
Matrix pd_inv_sqrt(const Matrix& M);

/// Unitary U with U*U = I and U M Hermitian positive definite.
/// M must be square and nonsingular.
Matrix polar_unitary(const Matrix& M);

/// Largest singular value.
double spectral_norm(const Matrix& M);

/// Solve M X = B for Hermitian PD M; throws PositivityError otherwise.
Matrix pd_solve(const Matrix& M, const Matrix& B);

bool all_finite(const Matrix& M);

}  // namespace matcore
}  // namespace vtc
