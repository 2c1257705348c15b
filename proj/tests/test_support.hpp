#pragma once

// Shared random generators for the property-based tests. Everything is
// seeded explicitly so failures reproduce.

#include <random>

#include "vtc/hankel_canonical.hpp"
#include "vtc/moment_lft.hpp"
#include "vtc/toeplitz_dirac.hpp"

namespace vtc::testing {

/// Moments of the representing measure of a rational Herglotz function,
/// read off the exact expansion at infinity: moment_j = -coeff of z^{-(j+1)}.
inline std::vector<Matrix> asymptotic_moments(const moment::RationalHerglotz& phi,
                                              int count) {
  const int d = phi.D.degree();
  const std::vector<Matrix> E = poly::inverse_series_at_infinity(phi.D, d + count + 1);
  std::vector<Matrix> out;
  const int p = static_cast<int>(phi.D.cols);
  for (int j = 0; j < count; ++j) {
    Matrix acc = Matrix::Zero(phi.N.rows, p);
    for (int k = 0; k <= phi.N.degree(); ++k) {
      const int m = k - d + j + 1;
      if (m >= 0 && m < static_cast<int>(E.size())) {
        acc += phi.N.coefficient(k) * E[m];
      }
    }
    out.push_back(-(Complex(0, 1) * acc));
  }
  return out;
}


inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  Matrix M(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) M(r, c) = Complex(gauss(rng), gauss(rng));
  }
  return M;
}

inline Matrix random_hermitian(std::mt19937_64& rng, int p, double scale = 1.0) {
  const Matrix M = random_matrix(rng, p, p, scale);
  return (M + M.adjoint()) / 2.0;
}

inline Matrix random_pd(std::mt19937_64& rng, int p, double scale = 1.0) {
  const Matrix G = random_matrix(rng, p, p, scale);
  return G * G.adjoint() + 0.05 * scale * scale * Matrix::Identity(p, p);
}

/// Nonsingular matrix with a singular-value floor, for well-conditioned chains.
inline Matrix random_nonsingular(std::mt19937_64& rng, int p) {
  for (;;) {
    Matrix M = random_matrix(rng, p, p);
    Eigen::JacobiSVD<Matrix> svd(M);
    if (svd.singularValues().minCoeff() > 0.3) return M;
  }
}

/// Toeplitz data whose assembled matrix is PD: random small off-diagonal
/// blocks, diagonal block shifted until the full section passes Cholesky.
inline toeplitz::ToeplitzSpec random_toeplitz_spec(std::mt19937_64& rng, int p, int n,
                                                  bool with_nu = true) {
  toeplitz::ToeplitzSpec spec;
  spec.p = p;
  spec.s.push_back(random_hermitian(rng, p, 0.5));
  for (int k = 1; k < n; ++k) spec.s.push_back(random_matrix(rng, p, p, 0.5));
  spec.nu = with_nu ? random_hermitian(rng, p) : Matrix(Matrix::Zero(p, p));
  for (;;) {
    const Matrix S = toeplitz::assemble_toeplitz(spec);
    Eigen::SelfAdjointEigenSolver<Matrix> es(S);
    const double lo = es.eigenvalues().minCoeff();
    if (lo > 0.1) break;
    spec.s[0] += (0.2 - lo) * Matrix::Identity(p, p);
  }
  return spec;
}

inline hankel::DiscreteMeasure random_measure(std::mt19937_64& rng, int p, int atoms) {
  std::uniform_real_distribution<double> node(-2.0, 2.0);
  hankel::DiscreteMeasure measure;
  measure.p = p;
  for (int j = 0; j < atoms; ++j) {
    double t;
    for (;;) {
      t = node(rng);
      bool clash = false;
      for (const auto& a : measure.atoms) clash = clash || std::abs(a.t - t) < 0.05;
      if (!clash) break;
    }
    measure.atoms.push_back({t, random_pd(rng, p, 0.7)});
  }
  return measure;
}

/// PD Hankel data as power moments of a random discrete measure with at
/// least n*p atoms.
inline hankel::HankelSpec random_hankel_spec(std::mt19937_64& rng, int p, int n) {
  for (;;) {
    const hankel::DiscreteMeasure measure = random_measure(rng, p, n * p + 1);
    hankel::HankelSpec spec = hankel::measure_to_hankel(measure, n);
    Eigen::SelfAdjointEigenSolver<Matrix> es(hankel::assemble_hankel(spec));
    if (es.eigenvalues().minCoeff() > 1e-4 * (1.0 + es.eigenvalues().maxCoeff())) {
      return spec;
    }
  }
}

/// Random chain satisfying the coefficient constraints: gamma_0 = [0, G],
/// later gamma_k = [R, iBR^{-*}] with B Hermitian (so gamma J gamma* = 0),
/// retried until the cross terms det(gamma_{k-1} J gamma_k*) stay away
/// from zero. Normalization to omega happens in omega_from_gamma.
inline hankel::GammaSeq random_gamma_chain(std::mt19937_64& rng, int p, int n) {
  for (;;) {
    hankel::GammaSeq gs;
    gs.p = p;
    Matrix G = random_nonsingular(rng, p);
    G /= matcore::spectral_norm(G);
    Matrix g0(p, 2 * p);
    g0 << Matrix::Zero(p, p), G;
    gs.gamma.push_back(g0);
    const Matrix J = toeplitz::flip_J(p);
    // Track the normalized chain so each new row can be rescaled to keep
    // the cross terms near unit norm; otherwise the quadratic normalization
    // blows the coefficients up geometrically in n.
    Matrix omega_prev = hankel::omega_from_gamma(gs).omega[0];
    for (int k = 1; k < n; ++k) {
      for (int attempt = 0; attempt < 256; ++attempt) {
        const Matrix R = random_nonsingular(rng, p);
        const Matrix B = random_hermitian(rng, p);
        Matrix g(p, 2 * p);
        g << R, Complex(0, 1) * B * R.adjoint().inverse();
        const Matrix cross = Complex(0, 1) * g * J * omega_prev.adjoint();
        Eigen::JacobiSVD<Matrix> svd(cross);
        const double hi = svd.singularValues().maxCoeff();
        if (svd.singularValues().minCoeff() > 0.2 * hi) {
          g /= hi;
          gs.gamma.push_back(g);
          const Matrix u = matcore::polar_unitary(cross / hi);
          omega_prev = (u * (cross / hi)) * (u * g);
          break;
        }
      }
      if (static_cast<int>(gs.gamma.size()) != k + 1) break;  // restart chain
    }
    if (static_cast<int>(gs.gamma.size()) != n) continue;
    // The moment matrix of a chain can be badly conditioned even when every
    // t_k is tame; keep only chains whose sections invert cleanly so that
    // round-trip tests probe the maps, not the conditioning of the inputs.
    try {
      const hankel::HankelSpec spec = hankel::hankel_from_omega(omega_from_gamma(gs));
      Eigen::SelfAdjointEigenSolver<Matrix> es(hankel::assemble_hankel(spec));
      const double lo = es.eigenvalues().minCoeff();
      const double hi = es.eigenvalues().maxCoeff();
      if (lo > 1e-4 * hi) return gs;
    } catch (const Error&) {
    }
  }
}

inline hankel::OmegaSeq random_omega_chain(std::mt19937_64& rng, int p, int n) {
  return hankel::omega_from_gamma(random_gamma_chain(rng, p, n));
}

/// Constant parameter [I; M] with M + M* > 0: nonsingular with strict
/// property J (the J-form equals M + M*).
inline Matrix random_strict_J_param(std::mt19937_64& rng, int p) {
  const Matrix M = random_pd(rng, p) + Complex(0, 1) * random_hermitian(rng, p);
  Matrix Q(2 * p, p);
  Q << Matrix::Identity(p, p), M;
  return Q;
}

inline Matrix random_unitary(std::mt19937_64& rng, int p) {
  return matcore::polar_unitary(random_nonsingular(rng, p));
}

}  // namespace vtc::testing
