#include "vtc/matcore.hpp"

#include <cmath>

namespace vtc::matcore {

Matrix eye(Eigen::Index m) { return Matrix::Identity(m, m); }

double hermiticity_residual(const Matrix& M) {
  return (M - M.adjoint()).norm() / (1.0 + M.norm());
}

bool is_hermitian(const Matrix& M, double tol) {
  return M.rows() == M.cols() && hermiticity_residual(M) <= tol;
}

PdCheck is_positive_definite(const Matrix& M, double herm_tol) {
  if (M.rows() != M.cols()) {
    throw DimensionError("is_positive_definite: matrix is not square");
  }
  PdCheck out;
  if (!is_hermitian(M, herm_tol)) return out;

  // Unpivoted Cholesky on the Hermitian part; pivots are the d_k of the
  // LDL* factorization. Sizes here are small, so the plain loop is fine.
  const Eigen::Index m = M.rows();
  Matrix H = (M + M.adjoint()) / 2.0;
  Matrix L = Matrix::Zero(m, m);
  Eigen::VectorXd d(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    double pivot = H(k, k).real();
    for (Eigen::Index j = 0; j < k; ++j) {
      pivot -= std::norm(L(k, j)) * d(j);
    }
    d(k) = pivot;
    if (k == 0 || pivot < out.min_pivot) out.min_pivot = pivot;
    if (!(pivot > 0.0)) return out;
    for (Eigen::Index i = k + 1; i < m; ++i) {
      Complex v = H(i, k);
      for (Eigen::Index j = 0; j < k; ++j) {
        v -= L(i, j) * std::conj(L(k, j)) * d(j);
      }
      L(i, k) = v / pivot;
    }
  }
  out.positive = true;
  return out;
}

void require_pd(const Matrix& M, const std::string& what) {
  if (!is_positive_definite(M).positive) {
    throw PositivityError(what + ": matrix is not Hermitian positive definite");
  }
}

namespace {

Matrix pd_function(const Matrix& M, double (*f)(double), const char* what) {
  if (M.rows() != M.cols()) throw DimensionError(std::string(what) + ": not square");
  if (!is_hermitian(M)) throw PositivityError(std::string(what) + ": not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es((M + M.adjoint()) / 2.0);
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.size() > 0 && ev.minCoeff() <= 0.0) {
    throw PositivityError(std::string(what) + ": not positive definite");
  }
  Eigen::VectorXd fv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) fv(i) = f(ev(i));
  return es.eigenvectors() * fv.asDiagonal().toDenseMatrix().cast<Complex>() *
         es.eigenvectors().adjoint();
}

}  // namespace

Matrix pd_sqrt(const Matrix& M) {
  return pd_function(M, [](double x) { return std::sqrt(x); }, "pd_sqrt");
}

Matrix pd_inv_sqrt(const Matrix& M) {
  return pd_function(M, [](double x) { return 1.0 / std::sqrt(x); }, "pd_inv_sqrt");
}

Matrix polar_unitary(const Matrix& M) {
  if (M.rows() != M.cols()) throw DimensionError("polar_unitary: not square");
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= sv(0) * 1e-13 || sv(0) == 0.0) {
    throw StructureError("polar_unitary: matrix is singular");
  }
  // M = W H with W = U V*; then U = W* makes U M = V Sigma V* > 0.
  return svd.matrixV() * svd.matrixU().adjoint();
}

double spectral_norm(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  return M.jacobiSvd().singularValues()(0);
}

Matrix pd_solve(const Matrix& M, const Matrix& B) {
  require_pd(M, "pd_solve");
  return Eigen::LLT<Matrix>((M + M.adjoint()) / 2.0).solve(B);
}

bool all_finite(const Matrix& M) {
  return M.allFinite();
}

}  // namespace vtc::matcore
