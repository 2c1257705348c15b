#include "vtc/matrix_poly.hpp"

#include <algorithm>
#include <numeric>

namespace vtc::poly {

MatrixPoly MatrixPoly::constant(const Matrix& M) {
  MatrixPoly P(M.rows(), M.cols());
  P.coef.push_back(M);
  return P;
}

MatrixPoly MatrixPoly::zero(Eigen::Index r, Eigen::Index c) { return MatrixPoly(r, c); }

Matrix MatrixPoly::coefficient(int k) const {
  if (k < 0 || k >= static_cast<int>(coef.size())) return Matrix::Zero(rows, cols);
  return coef[k];
}

Matrix MatrixPoly::eval(Complex z) const {
  Matrix acc = Matrix::Zero(rows, cols);
  for (int k = static_cast<int>(coef.size()) - 1; k >= 0; --k) {
    acc = acc * z + coef[k];
  }
  return acc;
}

void MatrixPoly::trim(double tol) {
  while (!coef.empty() && coef.back().norm() <= tol) coef.pop_back();
}

MatrixPoly operator+(const MatrixPoly& a, const MatrixPoly& b) {
  if (a.rows != b.rows || a.cols != b.cols) {
    throw DimensionError("MatrixPoly: shape mismatch in +");
  }
  MatrixPoly out(a.rows, a.cols);
  const size_t m = std::max(a.coef.size(), b.coef.size());
  for (size_t k = 0; k < m; ++k) {
    out.coef.push_back(a.coefficient(static_cast<int>(k)) +
                       b.coefficient(static_cast<int>(k)));
  }
  return out;
}

MatrixPoly operator-(const MatrixPoly& a, const MatrixPoly& b) {
  return a + (Complex(-1.0, 0.0) * b);
}

MatrixPoly operator*(const MatrixPoly& a, const MatrixPoly& b) {
  if (a.cols != b.rows) throw DimensionError("MatrixPoly: shape mismatch in *");
  MatrixPoly out(a.rows, b.cols);
  if (a.is_zero() || b.is_zero()) return out;
  out.coef.assign(a.coef.size() + b.coef.size() - 1, Matrix::Zero(a.rows, b.cols));
  for (size_t i = 0; i < a.coef.size(); ++i) {
    for (size_t j = 0; j < b.coef.size(); ++j) {
      out.coef[i + j] += a.coef[i] * b.coef[j];
    }
  }
  return out;
}

MatrixPoly operator*(const Matrix& a, const MatrixPoly& b) {
  MatrixPoly out(a.rows(), b.cols);
  for (const Matrix& c : b.coef) out.coef.push_back(a * c);
  return out;
}

MatrixPoly operator*(const MatrixPoly& a, const Matrix& b) {
  MatrixPoly out(a.rows, b.cols());
  for (const Matrix& c : a.coef) out.coef.push_back(c * b);
  return out;
}

MatrixPoly operator*(Complex a, const MatrixPoly& b) {
  MatrixPoly out(b.rows, b.cols);
  for (const Matrix& c : b.coef) out.coef.push_back(a * c);
  return out;
}

namespace {

std::vector<Complex> scalar_mul(const std::vector<Complex>& a,
                                const std::vector<Complex>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Complex> out(a.size() + b.size() - 1, Complex(0.0));
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

void permutations_rec(std::vector<int>& perm, std::vector<bool>& used, int sign,
                      const MatrixPoly& P, std::vector<Complex>& acc) {
  const int p = static_cast<int>(P.rows);
  const int row = static_cast<int>(perm.size());
  if (row == p) {
    std::vector<Complex> term{Complex(static_cast<double>(sign), 0.0)};
    for (int r = 0; r < p; ++r) {
      std::vector<Complex> entry;
      entry.reserve(P.coef.size());
      for (const Matrix& c : P.coef) entry.push_back(c(r, perm[r]));
      term = scalar_mul(term, entry);
      if (term.empty()) return;
    }
    if (acc.size() < term.size()) acc.resize(term.size(), Complex(0.0));
    for (size_t k = 0; k < term.size(); ++k) acc[k] += term[k];
    return;
  }
  for (int c = 0; c < p; ++c) {
    if (used[c]) continue;
    // Sign flips once per inversion introduced by placing column c here.
    int flips = 0;
    for (int prev : perm) {
      if (prev > c) ++flips;
    }
    used[c] = true;
    perm.push_back(c);
    permutations_rec(perm, used, (flips % 2 == 0) ? sign : -sign, P, acc);
    perm.pop_back();
    used[c] = false;
  }
}

}  // namespace

std::vector<Complex> det_poly(const MatrixPoly& P) {
  if (P.rows != P.cols) throw DimensionError("det_poly: polynomial is not square");
  if (P.is_zero()) return {};
  std::vector<Complex> acc;
  std::vector<int> perm;
  std::vector<bool> used(P.rows, false);
  permutations_rec(perm, used, 1, P, acc);
  while (!acc.empty() && std::abs(acc.back()) == 0.0) acc.pop_back();
  return acc;
}

std::vector<Complex> poly_roots(const std::vector<Complex>& c, double trim_tol) {
  std::vector<Complex> a = c;
  double scale = 0.0;
  for (const Complex& v : a) scale = std::max(scale, std::abs(v));
  while (!a.empty() && std::abs(a.back()) <= trim_tol * scale) a.pop_back();
  if (a.size() <= 1) return {};
  const int d = static_cast<int>(a.size()) - 1;
  Matrix Cmp = Matrix::Zero(d, d);
  for (int i = 1; i < d; ++i) Cmp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) Cmp(i, d - 1) = -a[i] / a[d];
  Eigen::ComplexEigenSolver<Matrix> es(Cmp, false);
  std::vector<Complex> roots(es.eigenvalues().data(),
                             es.eigenvalues().data() + d);
  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return roots;
}

std::vector<Matrix> inverse_series_at_infinity(const MatrixPoly& D, int terms) {
  if (D.rows != D.cols) throw DimensionError("inverse_series_at_infinity: not square");
  const int d = D.degree();
  if (d < 0) throw StructureError("inverse_series_at_infinity: zero polynomial");
  const Matrix lead = D.coef[d];
  Eigen::PartialPivLU<Matrix> lu(lead);
  if (std::abs(lu.determinant()) < 1e-300) {
    throw StructureError("inverse_series_at_infinity: leading coefficient singular");
  }
  std::vector<Matrix> E;
  E.reserve(terms);
  for (int m = 0; m < terms; ++m) {
    Matrix rhs = (m == 0) ? Matrix::Identity(D.rows, D.cols)
                          : Matrix::Zero(D.rows, D.cols).eval();
    for (int j = 1; j <= std::min(m, d); ++j) {
      rhs -= D.coef[d - j] * E[m - j];
    }
    E.push_back(lu.solve(rhs));
  }
  return E;
}

}  // namespace vtc::poly
