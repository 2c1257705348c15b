#pragma once

#include <vector>

#include "vtc/hankel_canonical.hpp"
#include "vtc/matrix_poly.hpp"

namespace vtc::moment {

using hankel::CanonicalSystem;
using hankel::DiscreteMeasure;
using hankel::DiscreteMeasureAtom;
using hankel::HankelSpec;
using poly::MatrixPoly;

/// Constant 2p x p parameter of the linear fractional transformation.
struct QParam {
  Matrix Q;

  int p() const { return static_cast<int>(Q.cols()); }
};

struct PropertyJCheck {
  bool property_j = false;  // Q*Q > 0 and Q*JQ >= 0
  bool j_neutral = false;   // Q*JQ = 0
};

/// phi(z) = i N(z) D(z)^{-1} with polynomial numerator and denominator.
struct RationalHerglotz {
  MatrixPoly N;
  MatrixPoly D;

  Matrix eval(Complex z) const;
};

struct HerglotzDecomposition {
  Matrix mu;              // p x p PSD linear-term coefficient (always zero here)
  Matrix nu_h;            // p x p Hermitian shift
  DiscreteMeasure measure;
};

struct MomentReport {
  int equal_through = -1;  // largest k with H_k matched
  Matrix gap;              // H_{2n-2} - integral t^{2n-2} d tau, PSD
};

struct RepresentationReport {
  double h_tau_gap_min_eig = 0.0;    // smallest eigenvalue of H - H_tau
  double resolvent_residual = 0.0;   // Vandermonde form of (I - zA)^{-1} Phi2
  double herglotz_residual = 0.0;    // integral representation cross-check
  Matrix nu_h;
};

/// Transfer polynomial of the first r canonical-system factors.
MatrixPoly frakA(const CanonicalSystem& cs, int r);
MatrixPoly frakA(const HankelSpec& spec, int r);

/// Linear fractional transformation with a constant parameter.
RationalHerglotz lft_phi(const MatrixPoly& frak_a, const QParam& param);

/// Pole/residue extraction for a real-symmetric rational Herglotz function.
DiscreteMeasure extract_measure(const RationalHerglotz& phi);

/// Moment comparison; throws on a mismatch below the top moment order.
MomentReport verify_moments(const DiscreteMeasure& measure, const HankelSpec& spec,
                            double tol = 1e-8);

HerglotzDecomposition herglotz_decompose(const RationalHerglotz& phi,
                                         const DiscreteMeasure& measure);

/// Representation cross-checks for a spec/measure pair; throws if H - H_tau fails PSD.
RepresentationReport verify_representation(const HankelSpec& spec, const DiscreteMeasure& measure);

PropertyJCheck check_property_J(const QParam& param);

/// True when param satisfies the equality-case conditions against the last
/// coefficient: Q*JQ = 0 and det(omega_{n-1} J Q) != 0.
bool equality_case_parameter(const hankel::OmegaSeq& os, const QParam& param);

/// Smallest eigenvalue of the Herglotz imaginary part (phi(z) - phi(z)*)/(2i).
double herglotz_im_min_eig(const RationalHerglotz& phi, Complex z);

/// Cauchy transform of a discrete measure, sum w_j / (t_j - z).
Matrix cauchy_transform(const DiscreteMeasure& measure, Complex z);

}  // namespace vtc::moment
