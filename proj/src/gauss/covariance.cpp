#include "cvqr/gauss/covariance.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "cvqr/errors.hpp"

namespace cvqr {

using cplx = std::complex<double>;

CovarianceMatrix CovarianceMatrix::symmetric(double c, double s) {
  CovarianceMatrix cm;
  cm.gamma.setZero();
  cm.gamma(0, 0) = cm.gamma(1, 1) = cm.gamma(2, 2) = cm.gamma(3, 3) = c;
  cm.gamma(0, 2) = cm.gamma(2, 0) = s;
  cm.gamma(1, 3) = cm.gamma(3, 1) = -s;
  return cm;
}

CovarianceMatrix CovarianceMatrix::lossy_epr(double lambda, double tau) {
  if (!(lambda >= 0.0 && lambda < 1.0) || !(tau >= 0.0 && tau <= 1.0)) {
    fail(ErrorCode::domain, "lossy_epr: lambda must be in [0, 1) and tau in [0, 1]");
  }
  const double l2 = lambda * lambda;
  const double ch = (1.0 + l2) / (1.0 - l2);
  const double sh = 2.0 * lambda / (1.0 - l2);
  return symmetric(1.0 + tau * (ch - 1.0), tau * sh);
}

CovarianceMatrix CovarianceMatrix::one_sided_loss(double lambda, double tau) {
  if (!(lambda >= 0.0 && lambda < 1.0) || !(tau >= 0.0 && tau <= 1.0)) {
    fail(ErrorCode::domain, "one_sided_loss: lambda must be in [0, 1) and tau in [0, 1]");
  }
  const double l2 = lambda * lambda;
  const double v = (1.0 + l2) / (1.0 - l2);
  const double sh = 2.0 * lambda / (1.0 - l2);
  CovarianceMatrix cm;
  cm.gamma.setZero();
  cm.gamma(0, 0) = cm.gamma(1, 1) = v;
  cm.gamma(2, 2) = cm.gamma(3, 3) = tau * v + 1.0 - tau;
  const double c = std::sqrt(tau) * sh;
  cm.gamma(0, 2) = cm.gamma(2, 0) = c;
  cm.gamma(1, 3) = cm.gamma(3, 1) = -c;
  return cm;
}

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = omega(2, 3) = 1.0;
  omega(1, 0) = omega(3, 2) = -1.0;
  return omega;
}

double uncertainty_margin(const CovarianceMatrix& cm) {
  const Eigen::Matrix4cd m = cm.gamma.cast<cplx>() + cplx(0.0, 1.0) * symplectic_form().cast<cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool check_physical(const CovarianceMatrix& cm, double tol) {
  if (!cm.gamma.allFinite()) return false;
  if ((cm.gamma - cm.gamma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, cm.gamma.cwiseAbs().maxCoeff())) {
    return false;
  }
  return uncertainty_margin(cm) >= -tol;
}

Eigen::Vector2d symplectic_eigenvalues(const CovarianceMatrix& cm) {
  // i*Omega*gamma is Hermitian-similar with eigenvalues +-nu_k
  const Eigen::Matrix4cd m = cplx(0.0, 1.0) * (symplectic_form() * cm.gamma).cast<cplx>();
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(m, false);
  std::array<double, 4> ev{};
  for (int i = 0; i < 4; ++i) ev[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()(i).real());
  std::sort(ev.begin(), ev.end());
  return {0.5 * (ev[0] + ev[1]), 0.5 * (ev[2] + ev[3])};
}

}  // namespace cvqr
