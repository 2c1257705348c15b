#include "vtc/toeplitz_dirac.hpp"

#include <cmath>

namespace vtc::toeplitz {

using matcore::eye;
using matcore::is_hermitian;
using matcore::pd_inv_sqrt;
using matcore::pd_solve;
using matcore::spectral_norm;

namespace {

const Complex kI(0.0, 1.0);

void check_block(const Matrix& M, int p, const char* name) {
  if (M.rows() != p || M.cols() != p) {
    throw DimensionError(std::string(name) + ": block is not p x p");
  }
  if (!M.allFinite()) {
    throw SchemaError(std::string(name) + ": block has non-finite entries");
  }
}

ToeplitzSpec leading_section(const ToeplitzSpec& spec, int k) {
  ToeplitzSpec out;
  out.p = spec.p;
  out.nu = spec.nu;
  out.s.assign(spec.s.begin(), spec.s.begin() + k);
  return out;
}

}  // namespace

void ToeplitzSpec::validate() const {
  if (p <= 0 || s.empty()) throw DimensionError("ToeplitzSpec: empty spec");
  for (const Matrix& blk : s) check_block(blk, p, "ToeplitzSpec.s");
  check_block(nu, p, "ToeplitzSpec.nu");
  if (!is_hermitian(s[0])) throw SchemaError("ToeplitzSpec: s_0 is not Hermitian");
  if (!is_hermitian(nu)) throw SchemaError("ToeplitzSpec: nu is not Hermitian");
}

Matrix flip_J(int p) {
  Matrix J = Matrix::Zero(2 * p, 2 * p);
  J.topRightCorner(p, p) = eye(p);
  J.bottomLeftCorner(p, p) = eye(p);
  return J;
}

Matrix signature_j(int p) {
  Matrix j = Matrix::Zero(2 * p, 2 * p);
  j.topLeftCorner(p, p) = eye(p);
  j.bottomRightCorner(p, p) = -eye(p);
  return j;
}

Matrix cayley_K(int p) {
  Matrix K(2 * p, 2 * p);
  const double r = 1.0 / std::sqrt(2.0);
  K.topLeftCorner(p, p) = r * eye(p);
  K.topRightCorner(p, p) = -r * eye(p);
  K.bottomLeftCorner(p, p) = r * eye(p);
  K.bottomRightCorner(p, p) = r * eye(p);
  return K;
}

Matrix assemble_toeplitz(const ToeplitzSpec& spec) {
  spec.validate();
  const int p = spec.p, n = spec.n();
  Matrix S(n * p, n * p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int d = j - i;  // block (i,j) holds s_{j-i}
      if (d <= 0) {
        S.block(i * p, j * p, p, p) = spec.s[-d];
      } else {
        S.block(i * p, j * p, p, p) = spec.s[d].adjoint();
      }
    }
  }
  return S;
}

ToeplitzIdentityData build_identity(const ToeplitzSpec& spec) {
  spec.validate();
  const int p = spec.p, n = spec.n();
  ToeplitzIdentityData d;
  d.A = Matrix::Zero(n * p, n * p);
  for (int i = 0; i < n; ++i) {
    d.A.block(i * p, i * p, p, p) = (kI / 2.0) * eye(p);
    for (int j = 0; j < i; ++j) {
      d.A.block(i * p, j * p, p, p) = kI * eye(p);
    }
  }
  d.Phi1 = Matrix::Zero(n * p, p);
  d.Phi2 = Matrix::Zero(n * p, p);
  Matrix partial = spec.s[0] / 2.0;
  for (int i = 0; i < n; ++i) {
    d.Phi1.block(i * p, 0, p, p) = eye(p);
    d.Phi2.block(i * p, 0, p, p) = partial;
    if (i + 1 < n) partial += spec.s[i + 1];
  }
  d.Phi2 += kI * d.Phi1 * spec.nu;
  d.J = flip_J(p);
  d.K = cayley_K(p);
  d.j = signature_j(p);
  return d;
}

Matrix ToeplitzIdentityData::Pi() const {
  Matrix P(Phi1.rows(), 2 * Phi1.cols());
  P << Phi1, Phi2;
  return P;
}

double verify_identity(const ToeplitzSpec& spec) {
  const Matrix S = assemble_toeplitz(spec);
  const ToeplitzIdentityData d = build_identity(spec);
  const Matrix Pi = d.Pi();
  return (d.A * S - S * d.A.adjoint() - kI * Pi * d.J * Pi.adjoint()).norm();
}

SchurQuantities schur_quantities(const ToeplitzSpec& spec, int k) {
  spec.validate();
  if (k < 1 || k > spec.n()) throw DimensionError("schur_quantities: k out of range");
  const int p = spec.p;
  const ToeplitzSpec sub = leading_section(spec, k);
  const Matrix Sk = assemble_toeplitz(sub);
  matcore::require_pd(Sk, "schur_quantities: S(k)");
  const ToeplitzIdentityData d = build_identity(sub);

  // Last block row of S(k)^{-1} against [I ... Phi1 Phi2].
  Matrix rhs(k * p, 3 * p);
  rhs.leftCols(p) = Matrix::Zero(k * p, p);
  rhs.block((k - 1) * p, 0, p, p) = eye(p);
  rhs.block(0, p, k * p, p) = d.Phi1;
  rhs.block(0, 2 * p, k * p, p) = d.Phi2;
  const Matrix sol = pd_solve(Sk, rhs);

  SchurQuantities q;
  q.t = sol.block((k - 1) * p, 0, p, p);
  q.t = (q.t + q.t.adjoint()) / 2.0;
  q.X = sol.block((k - 1) * p, p, p, p);
  q.Y = sol.block((k - 1) * p, 2 * p, p, p);
  Matrix XY(p, 2 * p);
  XY << q.X, q.Y;
  q.beta_km1 = pd_inv_sqrt(q.t) * XY;
  return q;
}

DiracSystem dirac_from_toeplitz(const ToeplitzSpec& spec) {
  spec.validate();
  const int p = spec.p, n = spec.n();
  const Matrix K = cayley_K(p);
  const Matrix j = signature_j(p);
  DiracSystem D;
  D.p = p;
  D.C.reserve(n);
  for (int k = 0; k < n; ++k) {
    const SchurQuantities q = schur_quantities(spec, k + 1);
    Matrix C = 2.0 * K.adjoint() * q.beta_km1.adjoint() * q.beta_km1 * K - j;
    D.C.push_back((C + C.adjoint()) / 2.0);
  }
  return D;
}

Matrix halmos_decompose(const Matrix& C) {
  if (C.rows() != C.cols() || C.rows() % 2 != 0) {
    throw DimensionError("halmos_decompose: expected a 2p x 2p matrix");
  }
  const int p = static_cast<int>(C.rows()) / 2;
  const Matrix j = signature_j(p);
  if (!matcore::is_positive_definite(C).positive ||
      (C * j * C - j).norm() > 1e-8 * (1.0 + C.norm())) {
    throw StructureError("halmos_decompose: matrix is not j-unitary positive");
  }
  const Matrix c11 = C.topLeftCorner(p, p);
  const Matrix c12 = C.topRightCorner(p, p);
  // c11 is a principal block of a PD matrix, hence PD.
  return pd_solve(c11, c12);
}

Matrix halmos_extend(const Matrix& rho) {
  if (rho.rows() != rho.cols()) throw DimensionError("halmos_extend: rho not square");
  const int p = static_cast<int>(rho.rows());
  if (spectral_norm(rho) >= 1.0) {
    throw ContractionError("halmos_extend: spectral norm of rho is not < 1");
  }
  Matrix C(2 * p, 2 * p);
  const Matrix dl = pd_inv_sqrt(eye(p) - rho * rho.adjoint());
  const Matrix dr = pd_inv_sqrt(eye(p) - rho.adjoint() * rho);
  C.topLeftCorner(p, p) = dl;
  C.topRightCorner(p, p) = dl * rho;
  C.bottomLeftCorner(p, p) = dr * rho.adjoint();
  C.bottomRightCorner(p, p) = dr;
  return (C + C.adjoint()) / 2.0;
}

VerblunskySeqT verblunsky_from_dirac(const DiracSystem& D) {
  VerblunskySeqT seq;
  seq.p = D.p;
  seq.rho.reserve(D.C.size());
  for (const Matrix& C : D.C) {
    try {
      seq.rho.push_back(halmos_decompose(C));
    } catch (const StructureError&) {
      throw StructureError("verblunsky_from_dirac: invalid potential");
    }
  }
  return seq;
}

DiracSystem dirac_from_verblunsky(const VerblunskySeqT& seq) {
  DiracSystem D;
  D.p = seq.p;
  D.C.reserve(seq.rho.size());
  for (const Matrix& rho : seq.rho) D.C.push_back(halmos_extend(rho));
  return D;
}

namespace {

// Forward map used by the Newton inverse: with blocks s_0..s_{-(k-1)} and nu
// fixed, evaluate C_k as a function of the trial block s_{-k}.
Matrix forward_Ck(const ToeplitzSpec& base, int k, const Matrix& s_trial) {
  ToeplitzSpec spec = base;
  spec.s.push_back(s_trial);
  const int p = spec.p;
  const SchurQuantities q = schur_quantities(spec, k + 1);
  const Matrix K = cayley_K(p);
  const Matrix j = signature_j(p);
  Matrix C = 2.0 * K.adjoint() * q.beta_km1.adjoint() * q.beta_km1 * K - j;
  return (C + C.adjoint()) / 2.0;
}

Eigen::VectorXd residual_vec(const Matrix& M) {
  Eigen::VectorXd r(2 * M.size());
  Eigen::Index idx = 0;
  for (Eigen::Index c = 0; c < M.cols(); ++c) {
    for (Eigen::Index rr = 0; rr < M.rows(); ++rr) {
      r(idx++) = M(rr, c).real();
      r(idx++) = M(rr, c).imag();
    }
  }
  return r;
}

Matrix unpack_block(const Eigen::VectorXd& x, int p) {
  Matrix M(p, p);
  Eigen::Index idx = 0;
  for (int c = 0; c < p; ++c) {
    for (int r = 0; r < p; ++r) {
      M(r, c) = Complex(x(idx), x(idx + 1));
      idx += 2;
    }
  }
  return M;
}

// Central completion of the next block: the choice of s_{-k} minimizing the
// Schur-complement loss of the extended section. Always strictly feasible,
// so it serves as a fallback seed when the zero block leaves the PD cone.
Matrix central_seed(const ToeplitzSpec& base, int k) {
  const int p = base.p;
  if (k <= 1) return Matrix::Zero(p, p);
  const Matrix S = assemble_toeplitz(base);
  Matrix cf((k - 1) * p, p);
  for (int i = 1; i < k; ++i) {
    cf.block((i - 1) * p, 0, p, p) = base.s[k - i].adjoint();
  }
  const Matrix T = S.inverse();
  const Matrix T00 = T.topLeftCorner(p, p);
  const Matrix T0f = T.block(0, p, p, (k - 1) * p);
  const Matrix c0 = -pd_solve((T00 + T00.adjoint()) / 2.0, T0f * cf);
  return c0.adjoint();
}

// Solve forward_Ck(s) = Ck_target for the next block by damped Newton with a
// finite-difference Jacobian. Uniqueness of the solution is part of the
// bijection contract, so convergence failures indicate bad input.
Matrix newton_block(const ToeplitzSpec& base, int k, const Matrix& Ck_target) {
  const int p = base.p;
  const int nvar = 2 * p * p;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(nvar);
  const double tol = 1e-10;
  const double fd_eps = 1e-7;

  Eigen::VectorXd r;
  try {
    r = residual_vec(forward_Ck(base, k, unpack_block(x, p)) - Ck_target);
  } catch (const PositivityError&) {
    x = residual_vec(central_seed(base, k));
    r = residual_vec(forward_Ck(base, k, unpack_block(x, p)) - Ck_target);
  }
  for (int iter = 0; iter < 100; ++iter) {
    if (r.norm() <= tol) return unpack_block(x, p);
    Eigen::MatrixXd Jac(r.size(), nvar);
    for (int v = 0; v < nvar; ++v) {
      Eigen::VectorXd xp = x;
      xp(v) += fd_eps;
      Eigen::VectorXd rp;
      try {
        rp = residual_vec(forward_Ck(base, k, unpack_block(xp, p)) - Ck_target);
      } catch (const PositivityError&) {
        xp(v) = x(v) - fd_eps;
        rp = r + (r - residual_vec(forward_Ck(base, k, unpack_block(xp, p)) - Ck_target));
      }
      Jac.col(v) = (rp - r) / fd_eps;
    }
    const Eigen::VectorXd dx = Jac.colPivHouseholderQr().solve(-r);
    double damp = 1.0;
    bool accepted = false;
    for (int half = 0; half < 25; ++half) {
      const Eigen::VectorXd xc = x + damp * dx;
      Eigen::VectorXd rc;
      try {
        rc = residual_vec(forward_Ck(base, k, unpack_block(xc, p)) - Ck_target);
      } catch (const PositivityError&) {
        damp /= 2.0;
        continue;  // stepped outside the PD cone
      }
      if (rc.norm() < r.norm() || rc.norm() <= tol) {
        x = xc;
        r = rc;
        accepted = true;
        break;
      }
      damp /= 2.0;
    }
    if (!accepted) break;
  }
  if (r.norm() <= tol) return unpack_block(x, p);
  throw ReconstructionError("toeplitz_from_verblunsky: Newton did not converge, residual " +
                            std::to_string(r.norm()));
}

}  // namespace

ToeplitzSpec toeplitz_from_verblunsky(const VerblunskySeqT& seq) {
  const DiracSystem D = dirac_from_verblunsky(seq);  // validates ||rho_k|| < 1
  const int p = seq.p, n = D.n();
  const Matrix K = cayley_K(p);
  const Matrix j = signature_j(p);

  // Base block: K (C_0 + j) K* / 2 equals beta(0)* beta(0), whose top-left
  // block is s_0^{-1} and whose top-right block is s_0^{-1} alpha_0.
  const Matrix M0 = K * (D.C[0] + j) * K.adjoint() / 2.0;
  const Matrix tl = M0.topLeftCorner(p, p);
  const Matrix tr = M0.topRightCorner(p, p);
  Matrix s0 = pd_solve(tl, eye(p));
  s0 = (s0 + s0.adjoint()) / 2.0;
  const Matrix alpha0 = pd_solve(tl, tr);
  Matrix nu = (alpha0 - alpha0.adjoint()) / (2.0 * kI);
  nu = (nu + nu.adjoint()) / 2.0;

  ToeplitzSpec spec;
  spec.p = p;
  spec.nu = nu;
  spec.s.push_back(s0);
  for (int k = 1; k < n; ++k) {
    spec.s.push_back(newton_block(spec, k, D.C[k]));
  }
  return spec;
}

Matrix transfer_wA(const ToeplitzSpec& spec, Complex lambda) {
  if (std::abs(lambda - kI / 2.0) < 1e-14) {
    throw DomainError("transfer_wA: lambda = i/2 is the pole of the resolvent");
  }
  const int p = spec.p, n = spec.n();
  const Matrix S = assemble_toeplitz(spec);
  matcore::require_pd(S, "transfer_wA: S(n)");
  const ToeplitzIdentityData d = build_identity(spec);
  const Matrix Pi = d.Pi();
  const Matrix shifted = d.A - lambda * Matrix::Identity(n * p, n * p);
  const Matrix res = shifted.triangularView<Eigen::Lower>().solve(Pi);
  return eye(2 * p) - kI * d.J * Pi.adjoint() * pd_solve(S, res);
}

Matrix transfer_factor(const ToeplitzSpec& spec, int k, Complex lambda) {
  if (std::abs(lambda - kI / 2.0) < 1e-14) {
    throw DomainError("transfer_factor: lambda = i/2 is a pole");
  }
  const int p = spec.p;
  const SchurQuantities q = schur_quantities(spec, k);
  Matrix XY(p, 2 * p);
  XY << q.X, q.Y;
  const Matrix J = flip_J(p);
  return eye(2 * p) -
         kI / (kI / 2.0 - lambda) * J * XY.adjoint() * pd_solve(q.t, XY);
}

Matrix transfer_product(const ToeplitzSpec& spec, Complex lambda) {
  const int p = spec.p;
  Matrix W = eye(2 * p);
  for (int k = 1; k <= spec.n(); ++k) {
    W = transfer_factor(spec, k, lambda) * W;
  }
  return W;
}

Matrix fundamental_W(const DiracSystem& D, int k, Complex lambda) {
  if (k < 0 || k > D.n()) throw DimensionError("fundamental_W: k out of range");
  if (k > 0 && std::abs(lambda) < 1e-14) {
    throw DomainError("fundamental_W: lambda = 0 is a pole");
  }
  const int p = D.p;
  const Matrix j = signature_j(p);
  Matrix W = eye(2 * p);
  for (int m = 0; m < k; ++m) {
    W = (eye(2 * p) - (kI / lambda) * j * D.C[m]) * W;
  }
  return W;
}

Matrix fundamental_W_via_transfer(const ToeplitzSpec& spec, int k, Complex lambda) {
  if (k < 0 || k > spec.n()) throw DimensionError("fundamental_W_via_transfer: k out of range");
  const int p = spec.p;
  if (k == 0) return eye(2 * p);
  if (std::abs(lambda) < 1e-14 || std::abs(lambda + kI) < 1e-14) {
    throw DomainError("fundamental_W_via_transfer: lambda in {0, -i}");
  }
  const Matrix K = cayley_K(p);
  const Matrix wA = transfer_wA(leading_section(spec, k), -lambda / 2.0);
  const Complex scale = std::pow((lambda + kI) / lambda, k);
  return scale * K.adjoint() * wA * K;
}

WeylSeries weyl_series(const ToeplitzSpec& spec, int m) {
  spec.validate();
  if (m < 0 || m > spec.n() - 1) {
    throw DimensionError("weyl_series: order m must satisfy 0 <= m <= n-1");
  }
  WeylSeries ws;
  ws.p = spec.p;
  ws.alpha0 = spec.s[0] / 2.0 + kI * spec.nu;
  ws.tail.assign(spec.s.begin() + 1, spec.s.begin() + 1 + m);
  return ws;
}

Matrix weyl_eval(const WeylSeries& ws, Complex lambda) {
  if (lambda.imag() >= 0.0) {
    throw DomainError("weyl_eval: lambda must lie in the open lower half-plane");
  }
  const Complex z = (lambda + kI) / (lambda - kI);
  Matrix acc = ws.alpha0;
  Complex zk = 1.0;
  for (const Matrix& blk : ws.tail) {
    zk *= z;
    acc += blk * zk;
  }
  return -kI * acc;
}

std::vector<double> weyl_inequality_check(const DiracSystem& D, const Matrix& phi,
                                          Complex lambda, int K_terms) {
  if (lambda.imag() >= 0.0 || std::abs(lambda) < 1e-14) {
    throw DomainError("weyl_inequality_check: lambda must be in C_- and nonzero");
  }
  if (K_terms < 0 || K_terms > D.n()) {
    throw DimensionError("weyl_inequality_check: K_terms out of range");
  }
  const int p = D.p;
  const Matrix K = cayley_K(p);
  Matrix u(2 * p, p);
  u << -kI * phi, eye(p);
  u = K.adjoint() * u;
  const double q = std::norm(lambda) / (std::norm(lambda) + 1.0);

  std::vector<double> sums;
  sums.reserve(K_terms + 1);
  sums.push_back(0.0);
  double acc = 0.0;
  double qk = 1.0;
  for (int k = 0; k < K_terms; ++k) {
    const Matrix Wu = fundamental_W(D, k, lambda) * u;
    acc += qk * (Wu.adjoint() * D.C[k] * Wu).real().trace();
    qk *= q;
    sums.push_back(acc);
  }
  return sums;
}

Matrix szego_step(const Matrix& a_k, const Matrix& Z_k, Complex lambda) {
  const int p = static_cast<int>(a_k.rows());
  if (a_k.cols() != p || Z_k.rows() != 2 * p) {
    throw DimensionError("szego_step: inconsistent shapes");
  }
  if (spectral_norm(a_k) >= 1.0) {
    throw ContractionError("szego_step: ||a_k|| must be < 1");
  }
  Matrix M(2 * p, 2 * p);
  M.topLeftCorner(p, p) = pd_inv_sqrt(eye(p) - a_k.adjoint() * a_k);
  M.bottomRightCorner(p, p) = pd_inv_sqrt(eye(p) - a_k * a_k.adjoint());
  const Matrix dl = M.topLeftCorner(p, p);
  const Matrix dr = M.bottomRightCorner(p, p);
  M.topRightCorner(p, p) = -dl * a_k.adjoint();
  M.bottomLeftCorner(p, p) = -dr * a_k;
  Matrix D = Matrix::Zero(2 * p, 2 * p);
  D.topLeftCorner(p, p) = lambda * eye(p);
  D.bottomRightCorner(p, p) = eye(p);
  return M * D * Z_k;
}

}  // namespace vtc::toeplitz
