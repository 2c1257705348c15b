#pragma once

#include <vector>

#include "vtc/matcore.hpp"
#include "vtc/matrix_poly.hpp"

namespace vtc::hankel {

/// Block Hankel data: p x p Hermitian blocks H_0..H_{2n-2}.
struct HankelSpec {
  int p = 0;
  std::vector<Matrix> H;  // 2n-1 blocks

  int n() const { return (static_cast<int>(H.size()) + 1) / 2; }
  void validate() const;
};

/// Companion matrices of the identity A H - H A* = i Pi J Pi*.
struct HankelIdentityData {
  Matrix A;     // np x np block down-shift
  Matrix Phi1;  // -i [0; H_0; ...; H_{n-2}]
  Matrix Phi2;  // [I; 0; ...; 0]
  Matrix J;     // 2p x 2p flip
  Matrix P2;    // p x np, [0 ... 0 I]

  Matrix Pi() const;
};

struct CanonicalSystem {
  int p = 0;
  std::vector<Matrix> Q;  // 2p x 2p Hermitian PSD, rank <= p

  int n() const { return static_cast<int>(Q.size()); }
};

struct OmegaSeq {
  int p = 0;
  std::vector<Matrix> omega;  // p x 2p

  int n() const { return static_cast<int>(omega.size()); }
  /// Check the defining relations: omega_0 [I;0] = 0, omega_0 [0;I] > 0,
  /// omega_k J omega_k* = 0, i omega_k J omega_{k-1}* > 0.
  void validate() const;
};

struct GammaSeq {
  int p = 0;
  std::vector<Matrix> gamma;  // p x 2p
};

struct DiscreteMeasureAtom {
  double t = 0.0;  // real node
  Matrix w;        // p x p PSD weight
};

struct DiscreteMeasure {
  int p = 0;
  std::vector<DiscreteMeasureAtom> atoms;
};

Matrix assemble_hankel(const HankelSpec& spec);

HankelIdentityData build_identity(const HankelSpec& spec);

/// ||A H - H A* - i Pi J Pi*||_F.
double verify_hankel_identity(const HankelSpec& spec);

/// t_k = (H_{2k-2} - H21 T(k-1) H12)^{-1}, k in 1..n; t_1 = H_0^{-1}.
Matrix schur_t_hankel(const HankelSpec& spec, int k);

OmegaSeq omega_from_hankel(const HankelSpec& spec);

CanonicalSystem hamiltonian_from_hankel(const HankelSpec& spec);
CanonicalSystem hamiltonian_from_omega(const OmegaSeq& os);

/// Rank-p factorization Q_k = gamma_k* gamma_k via eigendecomposition.
GammaSeq gamma_factor(const CanonicalSystem& cs);

/// Polar-normalized coefficients; independent of the gamma representative.
OmegaSeq omega_from_gamma(const GammaSeq& gs);

/// Inductive reconstruction of the Hankel blocks from the coefficients.
HankelSpec hankel_from_omega(const OmegaSeq& os);

/// Transfer polynomial product (I - izQ_0 J)...(I - izQ_{r-1} J), k=0 leftmost.
poly::MatrixPoly frakA_from_system(const CanonicalSystem& cs, int r);

/// Normalized fundamental solution Y(k, lambda) by recursion; lambda != 0.
Matrix fundamental_Y(const CanonicalSystem& cs, int k, Complex lambda);

/// Same solution as the ordered product of the one-step factors.
Matrix fundamental_Y_product(const CanonicalSystem& cs, int k, Complex lambda);

struct IsometryCheck {
  double lhs = 0.0;  // squared norm in l^2_Q
  double rhs = 0.0;  // squared norm of V h in L^2(tau)
};

/// V-transform isometry data for a finitely supported h (one 2p-vector per
/// site 0..n-1). Atoms at t = 0 use the limit Y(k, infinity) = I.
IsometryCheck spectral_transform_V(const CanonicalSystem& cs,
                                   const std::vector<Vector>& h,
                                   const DiscreteMeasure& measure);

/// Power moments H_k = sum_j t_j^k w_j, k = 0..2n-2.
HankelSpec measure_to_hankel(const DiscreteMeasure& measure, int n);

}  // namespace vtc::hankel
