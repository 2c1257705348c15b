#include "vtc/hankel_canonical.hpp"

#include <cmath>

#include "vtc/toeplitz_dirac.hpp"  // flip_J

namespace vtc::hankel {

using matcore::eye;
using matcore::is_hermitian;
using matcore::pd_solve;
using poly::MatrixPoly;
using toeplitz::flip_J;

namespace {

const Complex kI(0.0, 1.0);

HankelSpec leading_section(const HankelSpec& spec, int k) {
  HankelSpec out;
  out.p = spec.p;
  out.H.assign(spec.H.begin(), spec.H.begin() + (2 * k - 1));
  return out;
}

Matrix corner_column(const HankelSpec& spec, int m) {
  // H12(m) = [H_{m-1}; ...; H_{2m-3}], an (m-1)p x p column.
  const int p = spec.p;
  Matrix col((m - 1) * p, p);
  for (int i = 0; i < m - 1; ++i) {
    col.block(i * p, 0, p, p) = spec.H[m - 1 + i];
  }
  return col;
}

Matrix upper_selector(int p) {
  Matrix E = Matrix::Zero(2 * p, p);
  E.topRows(p) = eye(p);
  return E;
}

Matrix lower_selector(int p) {
  Matrix E = Matrix::Zero(2 * p, p);
  E.bottomRows(p) = eye(p);
  return E;
}

}  // namespace

void HankelSpec::validate() const {
  if (p <= 0 || H.empty() || H.size() % 2 == 0) {
    throw DimensionError("HankelSpec: block count must be odd (2n-1 blocks)");
  }
  for (const Matrix& blk : H) {
    if (blk.rows() != p || blk.cols() != p) {
      throw DimensionError("HankelSpec: block is not p x p");
    }
    if (!blk.allFinite()) throw SchemaError("HankelSpec: non-finite block");
    if (!is_hermitian(blk)) throw SchemaError("HankelSpec: block is not Hermitian");
  }
}

void OmegaSeq::validate() const {
  if (p <= 0 || omega.empty()) throw DimensionError("OmegaSeq: empty sequence");
  for (const Matrix& w : omega) {
    if (w.rows() != p || w.cols() != 2 * p) {
      throw DimensionError("OmegaSeq: coefficient is not p x 2p");
    }
  }
  const Matrix J = flip_J(p);
  const double scale = 1.0 + omega[0].squaredNorm();
  if ((omega[0] * upper_selector(p)).norm() > 1e-8 * scale) {
    throw ContractionError("OmegaSeq: omega_0 [I;0] != 0");
  }
  if (!matcore::is_positive_definite(omega[0] * lower_selector(p), 1e-8).positive) {
    throw ContractionError("OmegaSeq: omega_0 [0;I] is not positive definite");
  }
  for (int k = 1; k < n(); ++k) {
    const double sk = 1.0 + omega[k].squaredNorm();
    if ((omega[k] * J * omega[k].adjoint()).norm() > 1e-8 * sk) {
      throw ContractionError("OmegaSeq: omega_k J omega_k* != 0");
    }
    const Matrix t = kI * omega[k] * J * omega[k - 1].adjoint();
    if (!matcore::is_positive_definite(t, 1e-8).positive) {
      throw ContractionError("OmegaSeq: i omega_k J omega_{k-1}* is not PD");
    }
  }
}

Matrix assemble_hankel(const HankelSpec& spec) {
  spec.validate();
  const int p = spec.p, n = spec.n();
  Matrix H(n * p, n * p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      H.block(i * p, j * p, p, p) = spec.H[i + j];
    }
  }
  return H;
}

HankelIdentityData build_identity(const HankelSpec& spec) {
  spec.validate();
  const int p = spec.p, n = spec.n();
  HankelIdentityData d;
  d.A = Matrix::Zero(n * p, n * p);
  for (int i = 1; i < n; ++i) {
    d.A.block(i * p, (i - 1) * p, p, p) = eye(p);
  }
  d.Phi1 = Matrix::Zero(n * p, p);
  for (int i = 1; i < n; ++i) {
    d.Phi1.block(i * p, 0, p, p) = -kI * spec.H[i - 1];
  }
  d.Phi2 = Matrix::Zero(n * p, p);
  d.Phi2.topRows(p) = eye(p);
  d.J = flip_J(p);
  d.P2 = Matrix::Zero(p, n * p);
  d.P2.rightCols(p) = eye(p);
  return d;
}

Matrix HankelIdentityData::Pi() const {
  Matrix P(Phi1.rows(), 2 * Phi1.cols());
  P << Phi1, Phi2;
  return P;
}

double verify_hankel_identity(const HankelSpec& spec) {
  const Matrix H = assemble_hankel(spec);
  const HankelIdentityData d = build_identity(spec);
  const Matrix Pi = d.Pi();
  return (d.A * H - H * d.A.adjoint() - kI * Pi * d.J * Pi.adjoint()).norm();
}

Matrix schur_t_hankel(const HankelSpec& spec, int k) {
  spec.validate();
  if (k < 1 || k > spec.n()) throw DimensionError("schur_t_hankel: k out of range");
  const int p = spec.p;
  Matrix core;
  if (k == 1) {
    core = spec.H[0];
  } else {
    const Matrix Hk1 = assemble_hankel(leading_section(spec, k - 1));
    Eigen::PartialPivLU<Matrix> lu(Hk1);
    if (std::abs(lu.determinant()) < 1e-300) {
      throw StructureError("schur_t_hankel: leading section H(k-1) is singular");
    }
    const Matrix col = corner_column(spec, k);
    core = spec.H[2 * k - 2] - col.adjoint() * lu.solve(col);
  }
  Eigen::PartialPivLU<Matrix> lu(core);
  if (std::abs(lu.determinant()) < 1e-300) {
    throw StructureError("schur_t_hankel: Schur complement is singular");
  }
  Matrix t = lu.solve(eye(p));
  return (t + t.adjoint()) / 2.0;
}

OmegaSeq omega_from_hankel(const HankelSpec& spec) {
  spec.validate();
  const int p = spec.p, n = spec.n();
  OmegaSeq os;
  os.p = p;
  os.omega.reserve(n);
  for (int k = 0; k < n; ++k) {
    const HankelSpec sub = leading_section(spec, k + 1);
    const Matrix Hk = assemble_hankel(sub);
    matcore::require_pd(Hk, "omega_from_hankel: H(k+1)");
    const HankelIdentityData d = build_identity(sub);
    const Matrix sol = pd_solve(Hk, d.Pi());
    os.omega.push_back(sol.bottomRows(p));
  }
  return os;
}

CanonicalSystem hamiltonian_from_hankel(const HankelSpec& spec) {
  spec.validate();
  const int p = spec.p, n = spec.n();
  CanonicalSystem cs;
  cs.p = p;
  cs.Q.reserve(n);
  // Q_0 sits on the lower-right p x p block.
  Matrix Q0 = lower_selector(p) * pd_solve(spec.H[0], eye(p)) *
              lower_selector(p).adjoint();
  cs.Q.push_back((Q0 + Q0.adjoint()) / 2.0);
  for (int k = 1; k < n; ++k) {
    const HankelSpec sub = leading_section(spec, k + 1);
    const Matrix Hk = assemble_hankel(sub);
    matcore::require_pd(Hk, "hamiltonian_from_hankel: H(k+1)");
    const HankelIdentityData d = build_identity(sub);
    const Matrix w = Matrix(pd_solve(Hk, d.Pi())).bottomRows(p);  // P2 T Pi
    // t_{k+1}^{-1} is the Schur complement itself.
    const Matrix t = schur_t_hankel(spec, k + 1);
    Matrix Qk = w.adjoint() * pd_solve(t, w);
    cs.Q.push_back((Qk + Qk.adjoint()) / 2.0);
  }
  return cs;
}

CanonicalSystem hamiltonian_from_omega(const OmegaSeq& os) {
  os.validate();
  const int p = os.p;
  const Matrix J = flip_J(p);
  CanonicalSystem cs;
  cs.p = p;
  cs.Q.reserve(os.n());
  for (int k = 0; k < os.n(); ++k) {
    const Matrix& w = os.omega[k];
    Matrix t = (k == 0) ? Matrix(w * lower_selector(p))
                        : Matrix(kI * w * J * os.omega[k - 1].adjoint());
    t = (t + t.adjoint()) / 2.0;
    Matrix Qk = w.adjoint() * pd_solve(t, w);
    cs.Q.push_back((Qk + Qk.adjoint()) / 2.0);
  }
  return cs;
}

GammaSeq gamma_factor(const CanonicalSystem& cs) {
  const int p = cs.p;
  GammaSeq gs;
  gs.p = p;
  gs.gamma.reserve(cs.Q.size());
  for (const Matrix& Q : cs.Q) {
    if (!is_hermitian(Q, 1e-8)) {
      throw PositivityError("gamma_factor: Hamiltonian is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es((Q + Q.adjoint()) / 2.0);
    const double cutoff = 1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().sum());
    Matrix gamma = Matrix::Zero(p, 2 * p);
    int row = 0;
    for (int i = 2 * p - 1; i >= 0; --i) {
      const double ev = es.eigenvalues()(i);
      if (ev <= cutoff) break;
      if (row == p) {
        throw PositivityError("gamma_factor: Hamiltonian has rank > p");
      }
      gamma.row(row++) = std::sqrt(ev) * es.eigenvectors().col(i).adjoint();
    }
    gs.gamma.push_back(gamma);
  }
  return gs;
}

OmegaSeq omega_from_gamma(const GammaSeq& gs) {
  const int p = gs.p;
  const Matrix J = flip_J(p);
  OmegaSeq os;
  os.p = p;
  os.omega.reserve(gs.gamma.size());
  for (size_t k = 0; k < gs.gamma.size(); ++k) {
    const Matrix& g = gs.gamma[k];
    if (g.rows() != p || g.cols() != 2 * p) {
      throw DimensionError("omega_from_gamma: gamma_k is not p x 2p");
    }
    Matrix M = (k == 0) ? Matrix(g * lower_selector(p))
                        : Matrix(kI * g * J * os.omega[k - 1].adjoint());
    Matrix u;
    try {
      u = matcore::polar_unitary(M);
    } catch (const StructureError&) {
      throw ContractionError("omega_from_gamma: degenerate chain, det(gamma_{k-1} J gamma_k*) = 0");
    }
    const Matrix pos = u * M;  // Hermitian PD by the polar normalization
    os.omega.push_back(pos * u * g);
  }
  return os;
}

HankelSpec hankel_from_omega(const OmegaSeq& os) {
  os.validate();
  const int p = os.p, n = os.n();
  const Matrix J = flip_J(p);
  const CanonicalSystem cs = hamiltonian_from_omega(os);

  HankelSpec spec;
  spec.p = p;
  Matrix H0 = pd_solve(os.omega[0] * lower_selector(p), eye(p));
  spec.H.push_back((H0 + H0.adjoint()) / 2.0);

  for (int r = 1; r < n; ++r) {
    // phi(z) = i A1(r,z) omega_r* (A2(r,z) omega_r*)^{-1} expands at infinity
    // with coefficient -H_{2r-1} at z^{-2r}.
    const MatrixPoly frakA = frakA_from_system(cs, r);
    const Matrix Qc = os.omega[r].adjoint();
    MatrixPoly N(p, p), D(p, p);
    for (const Matrix& c : frakA.coef) {
      N.coef.push_back(c.topRows(p) * Qc);
      D.coef.push_back(c.bottomRows(p) * Qc);
    }
    N.trim(1e-13 * (1.0 + Qc.norm()));
    if (D.degree() != r ||
        std::abs(Eigen::PartialPivLU<Matrix>(D.coef[r]).determinant()) < 1e-300) {
      throw ContractionError("hankel_from_omega: leading coefficient of A2 omega_r* degenerate");
    }
    const std::vector<Matrix> E = poly::inverse_series_at_infinity(D, 2 * r);
    Matrix c2r = Matrix::Zero(p, p);
    for (int m = 0; m < std::min(r, N.degree() + 1); ++m) {
      c2r += N.coefficient(m) * E[m + r];
    }
    Matrix H_odd = -(kI * c2r);
    spec.H.push_back((H_odd + H_odd.adjoint()) / 2.0);

    // H_{2r} from the Schur complement relation with t_{r+1} = i w_r J w_{r-1}*.
    Matrix t = kI * os.omega[r] * J * os.omega[r - 1].adjoint();
    t = (t + t.adjoint()) / 2.0;
    const Matrix Hr = assemble_hankel(leading_section(spec, r));
    const Matrix col = corner_column(spec, r + 1);
    Matrix H_even = pd_solve(t, eye(p)) +
                    col.adjoint() * Eigen::PartialPivLU<Matrix>(Hr).solve(col);
    spec.H.push_back((H_even + H_even.adjoint()) / 2.0);
  }
  return spec;
}

poly::MatrixPoly frakA_from_system(const CanonicalSystem& cs, int r) {
  if (r < 0 || r > cs.n()) throw DimensionError("frakA_from_system: r out of range");
  const int p = cs.p;
  const Matrix J = flip_J(p);
  MatrixPoly acc = MatrixPoly::constant(eye(2 * p));
  for (int k = 0; k < r; ++k) {
    MatrixPoly factor(2 * p, 2 * p);
    factor.coef.push_back(eye(2 * p));
    factor.coef.push_back(-kI * cs.Q[k] * J);
    acc = acc * factor;  // k = 0 factor stays leftmost
  }
  return acc;
}

Matrix fundamental_Y(const CanonicalSystem& cs, int k, Complex lambda) {
  if (k < 0 || k > cs.n()) throw DimensionError("fundamental_Y: k out of range");
  if (k > 0 && std::abs(lambda) < 1e-14) {
    throw DomainError("fundamental_Y: lambda = 0 is a pole");
  }
  const int p = cs.p;
  const Matrix J = flip_J(p);
  Matrix Y = eye(2 * p);
  for (int m = 0; m < k; ++m) {
    const Matrix incr = (kI / lambda) * J * cs.Q[m] * Y;
    Y = Y + incr;
  }
  return Y;
}

Matrix fundamental_Y_product(const CanonicalSystem& cs, int k, Complex lambda) {
  if (k < 0 || k > cs.n()) throw DimensionError("fundamental_Y_product: k out of range");
  if (k > 0 && std::abs(lambda) < 1e-14) {
    throw DomainError("fundamental_Y_product: lambda = 0 is a pole");
  }
  const int p = cs.p;
  const Matrix J = flip_J(p);
  Matrix Y = eye(2 * p);
  for (int m = 0; m < k; ++m) {
    Y = (eye(2 * p) + (kI / lambda) * J * cs.Q[m]) * Y;
  }
  return Y;
}

IsometryCheck spectral_transform_V(const CanonicalSystem& cs,
                                   const std::vector<Vector>& h,
                                   const DiscreteMeasure& measure) {
  const int p = cs.p;
  if (static_cast<int>(h.size()) > cs.n()) {
    throw DimensionError("spectral_transform_V: support of h exceeds system order");
  }
  IsometryCheck out;
  for (size_t k = 0; k < h.size(); ++k) {
    if (h[k].size() != 2 * p) {
      throw DimensionError("spectral_transform_V: h(k) is not a 2p-vector");
    }
    out.lhs += (h[k].adjoint() * cs.Q[k] * h[k])(0, 0).real();
  }
  const Matrix P2 = lower_selector(p).adjoint();
  for (const DiscreteMeasureAtom& atom : measure.atoms) {
    Vector v = Vector::Zero(p);
    for (size_t k = 0; k < h.size(); ++k) {
      Matrix Yk;
      if (atom.t == 0.0) {
        Yk = eye(2 * p);  // Y(k, 1/t) -> I as the argument goes to infinity
      } else {
        Yk = fundamental_Y(cs, static_cast<int>(k), 1.0 / atom.t);
      }
      v += P2 * (Yk.adjoint() * (cs.Q[k] * h[k]));
    }
    out.rhs += (v.adjoint() * atom.w * v)(0, 0).real();
  }
  return out;
}

HankelSpec measure_to_hankel(const DiscreteMeasure& measure, int n) {
  if (n < 1 || measure.p <= 0) throw DimensionError("measure_to_hankel: bad order");
  const int p = measure.p;
  HankelSpec spec;
  spec.p = p;
  for (int k = 0; k <= 2 * n - 2; ++k) {
    Matrix Hk = Matrix::Zero(p, p);
    for (const DiscreteMeasureAtom& atom : measure.atoms) {
      if (atom.w.rows() != p || atom.w.cols() != p) {
        throw DimensionError("measure_to_hankel: weight is not p x p");
      }
      Hk += std::pow(atom.t, k) * atom.w;
    }
    spec.H.push_back((Hk + Hk.adjoint()) / 2.0);
  }
  return spec;
}

}  // namespace vtc::hankel
