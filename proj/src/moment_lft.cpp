#include "vtc/moment_lft.hpp"

#include <algorithm>
#include <cmath>

#include "vtc/toeplitz_dirac.hpp"  // flip_J

namespace vtc::moment {

using hankel::OmegaSeq;
using matcore::eye;
using toeplitz::flip_J;

namespace {

const Complex kI(0.0, 1.0);
constexpr double kPi = 3.14159265358979323846;

}  // namespace

Matrix RationalHerglotz::eval(Complex z) const {
  const Matrix Dz = D.eval(z);
  Eigen::PartialPivLU<Matrix> lu(Dz);
  if (std::abs(lu.determinant()) < 1e-250) {
    throw DomainError("RationalHerglotz::eval: z is at (or near) a pole");
  }
  const Matrix Nz = N.eval(z);
  // i N D^{-1} via the transposed system X D = N.
  const Matrix Xt = Dz.transpose().partialPivLu().solve(Matrix(Nz.transpose()));
  return kI * Xt.transpose();
}

MatrixPoly frakA(const CanonicalSystem& cs, int r) {
  return hankel::frakA_from_system(cs, r);
}

MatrixPoly frakA(const HankelSpec& spec, int r) {
  return hankel::frakA_from_system(hankel::hamiltonian_from_hankel(spec), r);
}

RationalHerglotz lft_phi(const MatrixPoly& frak_a, const QParam& param) {
  const int p = param.p();
  if (frak_a.rows != 2 * p || param.Q.rows() != 2 * p) {
    throw DimensionError("lft_phi: parameter does not match the transfer polynomial");
  }
  RationalHerglotz phi;
  phi.N = MatrixPoly(p, p);
  phi.D = MatrixPoly(p, p);
  for (const Matrix& c : frak_a.coef) {
    phi.N.coef.push_back(c.topRows(p) * param.Q);
    phi.D.coef.push_back(c.bottomRows(p) * param.Q);
  }
  const double scale = 1e-13 * (1.0 + param.Q.norm());
  phi.N.trim(scale);
  phi.D.trim(scale);
  const std::vector<Complex> dd = poly::det_poly(phi.D);
  bool nonzero = false;
  for (const Complex& c : dd) {
    if (std::abs(c) > 1e-12) nonzero = true;
  }
  if (!nonzero) {
    throw StructureError("lft_phi: det(A2 Q) vanishes identically, degenerate parameter");
  }
  return phi;
}

namespace {

// Sum of residues of -phi inside a circle around c, by trapezoidal contour
// quadrature (spectrally accurate for the analytic integrand).
Matrix contour_residue(const RationalHerglotz& phi, Complex c, double radius, int pts) {
  const int p = static_cast<int>(phi.D.rows);
  Matrix acc = Matrix::Zero(p, p);
  for (int m = 0; m < pts; ++m) {
    const double theta = 2.0 * kPi * m / pts;
    const Complex w = radius * std::exp(kI * theta);
    acc += phi.eval(c + w) * w;  // phi * dz/(i dtheta) collapses to phi * w
  }
  return -acc / static_cast<double>(pts);
}

}  // namespace

DiscreteMeasure extract_measure(const RationalHerglotz& phi) {
  const int p = static_cast<int>(phi.D.rows);
  DiscreteMeasure measure;
  measure.p = p;
  if (phi.N.is_zero()) return measure;

  const std::vector<Complex> dd = poly::det_poly(phi.D);
  std::vector<Complex> roots = poly::poly_roots(dd, 1e-11);
  if (roots.empty()) {
    // Polynomial part would violate the Herglotz decay; a nonzero constant
    // phi cannot come from a property-J parameter. Treat N/D constant as zero
    // measure only when phi itself vanishes.
    const Matrix probe = phi.eval(Complex(0.37, 1.13));
    if (probe.norm() > 1e-10) {
      throw DomainError("extract_measure: phi has no poles but does not vanish");
    }
    return measure;
  }

  // Real-symmetry probe; structurally guaranteed for J-neutral parameters.
  for (const Complex z : {Complex(0.41, 0.93), Complex(-1.27, 0.52), Complex(2.2, 2.9)}) {
    const Matrix d = phi.eval(z) - phi.eval(std::conj(z)).adjoint();
    if (d.norm() > 1e-9 * (1.0 + phi.eval(z).norm())) {
      throw DomainError("extract_measure: phi is not real-symmetric");
    }
  }
  double root_scale = 1.0;
  for (const Complex& r : roots) root_scale = std::max(root_scale, std::abs(r));
  for (const Complex& r : roots) {
    if (std::abs(r.imag()) > 1e-7 * root_scale) {
      throw DomainError("extract_measure: complex pole detected, phi is not Herglotz");
    }
  }

  // Cluster real poles within the documented radius; residues of a cluster
  // are collected by one contour.
  std::vector<std::vector<double>> clusters;
  std::vector<double> nodes;
  for (const Complex& r : roots) nodes.push_back(r.real());
  std::sort(nodes.begin(), nodes.end());
  for (double t : nodes) {
    if (!clusters.empty() && t - clusters.back().back() <= 1e-8 * root_scale) {
      clusters.back().push_back(t);
    } else {
      clusters.push_back({t});
    }
  }

  std::vector<double> centers;
  for (const std::vector<double>& cl : clusters) {
    double c = 0.0;
    for (double t : cl) c += t;
    centers.push_back(c / cl.size());
  }
  for (size_t i = 0; i < centers.size(); ++i) {
    double gap = 1.0;
    for (size_t j = 0; j < centers.size(); ++j) {
      if (j != i) gap = std::min(gap, std::abs(centers[j] - centers[i]) / 2.0);
    }
    const double spread = clusters[i].back() - clusters[i].front();
    const double radius = std::max(std::min(gap, 0.25), 4.0 * spread + 1e-9);
    Matrix w = contour_residue(phi, centers[i], radius, 256);
    w = (w + w.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(w);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-8 * (1.0 + w.norm())) {
      throw StructureError("extract_measure: residue is not PSD");
    }
    if (w.norm() > 1e-11) {
      measure.atoms.push_back({centers[i], w});
    }
  }

  // Partial fraction reconstruction must reproduce phi.
  for (const Complex z : {Complex(0.83, 0.61), Complex(-2.4, 1.7)}) {
    const Matrix d = cauchy_transform(measure, z) - phi.eval(z);
    if (d.norm() > 1e-8 * (1.0 + phi.eval(z).norm())) {
      throw StructureError("extract_measure: partial fractions do not match phi");
    }
  }
  return measure;
}

Matrix cauchy_transform(const DiscreteMeasure& measure, Complex z) {
  Matrix acc = Matrix::Zero(measure.p, measure.p);
  for (const DiscreteMeasureAtom& atom : measure.atoms) {
    acc += atom.w / (Complex(atom.t, 0.0) - z);
  }
  return acc;
}

MomentReport verify_moments(const DiscreteMeasure& measure, const HankelSpec& spec,
                            double tol) {
  spec.validate();
  const int n = spec.n();
  if (measure.atoms.empty()) {
    for (size_t k = 0; k < spec.H.size(); ++k) {
      if (spec.H[k].norm() > tol) {
        throw StructureError("verify_moments: moment mismatch at index " +
                             std::to_string(k));
      }
    }
  }
  const HankelSpec moments = hankel::measure_to_hankel(measure, n);
  MomentReport report;
  for (int k = 0; k <= 2 * n - 3; ++k) {
    const double err = (moments.H[k] - spec.H[k]).norm();
    if (err > tol * (1.0 + spec.H[k].norm())) {
      throw StructureError("verify_moments: moment mismatch at index " + std::to_string(k));
    }
    report.equal_through = k;
  }
  report.gap = spec.H[2 * n - 2] - moments.H[2 * n - 2];
  report.gap = (report.gap + report.gap.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(report.gap);
  if (es.eigenvalues().minCoeff() < -tol * (1.0 + spec.H[2 * n - 2].norm())) {
    throw PositivityError("verify_moments: top moment gap is not PSD");
  }
  if (report.gap.norm() <= tol * (1.0 + spec.H[2 * n - 2].norm())) {
    report.equal_through = 2 * n - 2;
  }
  return report;
}

HerglotzDecomposition herglotz_decompose(const RationalHerglotz& phi,
                                         const DiscreteMeasure& measure) {
  const int p = measure.p;
  HerglotzDecomposition out;
  out.mu = Matrix::Zero(p, p);  // forced by the shift structure of A
  out.nu_h = Matrix::Zero(p, p);
  for (const DiscreteMeasureAtom& atom : measure.atoms) {
    out.nu_h += (atom.t / (1.0 + atom.t * atom.t)) * atom.w;
  }
  out.nu_h = (out.nu_h + out.nu_h.adjoint()) / 2.0;
  out.measure = measure;
  (void)phi;
  return out;
}

RepresentationReport verify_representation(const HankelSpec& spec, const DiscreteMeasure& measure) {
  spec.validate();
  const int p = spec.p, n = spec.n();
  const Matrix H = assemble_hankel(spec);

  // H_tau with columns (I - tA)^{-1} Phi2 = [I; tI; ...; t^{n-1} I].
  Matrix H_tau = Matrix::Zero(n * p, n * p);
  for (const DiscreteMeasureAtom& atom : measure.atoms) {
    Matrix V(n * p, p);
    double tk = 1.0;
    for (int i = 0; i < n; ++i) {
      V.block(i * p, 0, p, p) = tk * eye(p);
      tk *= atom.t;
    }
    H_tau += V * atom.w * V.adjoint();
  }
  RepresentationReport report;
  Eigen::SelfAdjointEigenSolver<Matrix> es(((H - H_tau) + (H - H_tau).adjoint()) / 2.0);
  report.h_tau_gap_min_eig = es.eigenvalues().minCoeff();
  if (report.h_tau_gap_min_eig < -1e-8 * (1.0 + H.norm())) {
    throw PositivityError("verify_representation: H - H_tau is not PSD");
  }

  // Resolvent identity at a sample point.
  {
    const Complex z(0.7, -0.3);
    const hankel::HankelIdentityData d = hankel::build_identity(spec);
    const Matrix lhs =
        (Matrix::Identity(n * p, n * p) - z * d.A).partialPivLu().solve(d.Phi2);
    Matrix rhs(n * p, p);
    Complex zk = 1.0;
    for (int i = 0; i < n; ++i) {
      rhs.block(i * p, 0, p, p) = zk * eye(p);
      zk *= z;
    }
    report.resolvent_residual = (lhs - rhs).norm();
  }

  const HerglotzDecomposition dec = herglotz_decompose(RationalHerglotz{}, measure);
  report.nu_h = dec.nu_h;
  for (int s = 0; s < 10; ++s) {
    const Complex z(0.3 * s - 1.2, 0.8 + 0.15 * s);
    Matrix via_h14 = dec.nu_h;
    for (const DiscreteMeasureAtom& atom : measure.atoms) {
      via_h14 += (1.0 / (Complex(atom.t, 0.0) - z) -
                  Complex(atom.t / (1.0 + atom.t * atom.t), 0.0)) *
                 atom.w;
    }
    const Matrix via_h10 = cauchy_transform(measure, z);
    report.herglotz_residual =
        std::max(report.herglotz_residual, (via_h14 - via_h10).norm());
  }
  return report;
}

PropertyJCheck check_property_J(const QParam& param) {
  const int p = param.p();
  if (param.Q.rows() != 2 * p) {
    throw DimensionError("check_property_J: parameter is not 2p x p");
  }
  PropertyJCheck out;
  const Matrix J = flip_J(p);
  const Matrix gram = param.Q.adjoint() * param.Q;
  const Matrix form = param.Q.adjoint() * J * param.Q;
  const double scale = 1.0 + param.Q.squaredNorm();
  if (!matcore::is_positive_definite(gram).positive) return out;
  Eigen::SelfAdjointEigenSolver<Matrix> es(((form + form.adjoint()) / 2.0).eval());
  out.property_j = es.eigenvalues().minCoeff() >= -1e-10 * scale;
  out.j_neutral = form.norm() <= 1e-10 * scale;
  return out;
}

bool equality_case_parameter(const OmegaSeq& os, const QParam& param) {
  if (!check_property_J(param).j_neutral) return false;
  const Matrix J = flip_J(os.p);
  const Matrix M = os.omega.back() * J * param.Q;
  return std::abs(Eigen::PartialPivLU<Matrix>(M).determinant()) >
         1e-10 * std::pow(1.0 + M.norm(), os.p);
}

double herglotz_im_min_eig(const RationalHerglotz& phi, Complex z) {
  const Matrix v = phi.eval(z);
  const Matrix im = (v - v.adjoint()) / (2.0 * kI);
  Eigen::SelfAdjointEigenSolver<Matrix> es(((im + im.adjoint()) / 2.0).eval());
  return es.eigenvalues().minCoeff();
}

}  // namespace vtc::moment
