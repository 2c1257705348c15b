#pragma once

#include <vector>

#include "vtc/matcore.hpp"

namespace vtc::toeplitz {

/// Block Toeplitz data: p x p blocks s_0, s_{-1}, ..., s_{1-n} plus the
/// Hermitian parameter nu. Blocks with positive index are forced by
/// Hermitian symmetry, s_k = (s_{-k})^*.
struct ToeplitzSpec {
  int p = 0;
  std::vector<Matrix> s;  // s[k] = s_{-k}, k = 0..n-1
  Matrix nu;              // p x p, Hermitian

  int n() const { return static_cast<int>(s.size()); }
  void validate() const;  // shape + Hermitian s_0, nu (not positivity)
};

/// Companion matrices of the operator identity A S - S A* = i Pi J Pi*.
struct ToeplitzIdentityData {
  Matrix A;     // np x np lower triangular Toeplitz
  Matrix Phi1;  // np x p, stack of identities
  Matrix Phi2;  // np x p, partial sums plus i Phi1 nu
  Matrix J;     // 2p x 2p flip
  Matrix K;     // 2p x 2p, (1/sqrt 2) [[I,-I],[I,I]]
  Matrix j;     // 2p x 2p signature diag(I,-I)

  Matrix Pi() const;  // [Phi1 Phi2]
};

struct DiracSystem {
  int p = 0;
  std::vector<Matrix> C;  // 2p x 2p potentials C_0..C_{n-1}

  int n() const { return static_cast<int>(C.size()); }
};

struct VerblunskySeqT {
  int p = 0;
  std::vector<Matrix> rho;  // p x p strict contractions

  int n() const { return static_cast<int>(rho.size()); }
};

/// Truncated Weyl series: i phi(i(z+1)/(z-1)) = alpha0 + sum s_{-k} z^k.
struct WeylSeries {
  int p = 0;
  Matrix alpha0;             // s_0/2 + i nu
  std::vector<Matrix> tail;  // s_{-1}, ..., s_{-m}
};

/// Schur quantities of the leading k x k block section.
struct SchurQuantities {
  Matrix t;         // p x p Hermitian PD Schur complement
  Matrix X;         // p x p
  Matrix Y;         // p x p
  Matrix beta_km1;  // p x 2p, beta(k-1) = t_k^{-1/2} [X_k Y_k]
};

Matrix flip_J(int p);
Matrix signature_j(int p);
Matrix cayley_K(int p);

Matrix assemble_toeplitz(const ToeplitzSpec& spec);

ToeplitzIdentityData build_identity(const ToeplitzSpec& spec);

/// ||A S - S A* - i Pi J Pi*||_F.
double verify_identity(const ToeplitzSpec& spec);

/// k in 1..n. Requires S(k) > 0.
SchurQuantities schur_quantities(const ToeplitzSpec& spec, int k);

DiracSystem dirac_from_toeplitz(const ToeplitzSpec& spec);

/// Halmos parameters of a j-unitary positive 2p x 2p matrix: rho = c11^{-1} c12.
Matrix halmos_decompose(const Matrix& C);

/// Halmos extension D F of a strict contraction rho.
Matrix halmos_extend(const Matrix& rho);

VerblunskySeqT verblunsky_from_dirac(const DiracSystem& D);

DiracSystem dirac_from_verblunsky(const VerblunskySeqT& seq);

/// Inverse of the forward pipeline; unique by construction. The base block
/// is closed form, later blocks are found by damped Newton on the forward map.
ToeplitzSpec toeplitz_from_verblunsky(const VerblunskySeqT& seq);

/// Direct transfer matrix evaluation through the resolvent. lambda != i/2.
Matrix transfer_wA(const ToeplitzSpec& spec, Complex lambda);

/// One factor w_k(lambda) of the multiplicative decomposition, k in 1..n.
Matrix transfer_factor(const ToeplitzSpec& spec, int k, Complex lambda);

/// Ordered product w_n ... w_1, equal to transfer_wA.
Matrix transfer_product(const ToeplitzSpec& spec, Complex lambda);

/// Fundamental Dirac solution by recursion W_{k+1} = (I - (i/lambda) j C_k) W_k.
Matrix fundamental_W(const DiracSystem& D, int k, Complex lambda);

/// Same solution through the transfer matrix route; lambda not in {0, -i}.
Matrix fundamental_W_via_transfer(const ToeplitzSpec& spec, int k, Complex lambda);

WeylSeries weyl_series(const ToeplitzSpec& spec, int m);

/// Evaluate the truncated series at lambda in the open lower half-plane.
Matrix weyl_eval(const WeylSeries& ws, Complex lambda);

/// Partial sums of the Weyl quadratic form, one entry per number of terms
/// 0..K_terms. Nondecreasing by positivity of each summand.
std::vector<double> weyl_inequality_check(const DiracSystem& D, const Matrix& phi,
                                          Complex lambda, int K_terms);

/// One step of the matrix Szego recurrence (demo utility).
Matrix szego_step(const Matrix& a_k, const Matrix& Z_k, Complex lambda);

}  // namespace vtc::toeplitz
