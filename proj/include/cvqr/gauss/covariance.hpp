#pragma once

#include <Eigen/Core>

namespace cvqr {

/// Second moments of a zero-mean two-mode state in shot-noise units
/// (vacuum = identity), quadrature order (x1, p1, x2, p2) with
/// x = a + a^dagger and p = -i(a - a^dagger).
struct CovarianceMatrix {
  Eigen::Matrix4d gamma = Eigen::Matrix4d::Identity();

  static CovarianceMatrix vacuum() { return {}; }

  /// Symmetric block form [[C*I, S*Z], [S*Z, C*I]] with Z = diag(1, -1).
  static CovarianceMatrix symmetric(double c, double s);

  /// Lossy two-mode squeezed vacuum, both modes through transmissivity tau.
  static CovarianceMatrix lossy_epr(double lambda, double tau);

  /// Two-mode squeezed vacuum with only the second mode through tau.
  static CovarianceMatrix one_sided_loss(double lambda, double tau);

  double operator()(int i, int j) const { return gamma(i, j); }
};

/// 4x4 symplectic form, direct sum of [[0, 1], [-1, 0]].
Eigen::Matrix4d symplectic_form();

/// Smallest eigenvalue of gamma + i*Omega.
double uncertainty_margin(const CovarianceMatrix& cm);

/// gamma + i*Omega >= 0 within `tol`.
bool check_physical(const CovarianceMatrix& cm, double tol = 1e-10);

/// Symplectic eigenvalues (ascending) from the spectrum of i*Omega*gamma.
Eigen::Vector2d symplectic_eigenvalues(const CovarianceMatrix& cm);

}  // namespace cvqr
