#include "cvqr/keyrate/rate.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <string>

#include "cvqr/errors.hpp"

namespace cvqr {

double FiberModel::tau() const { return fiber_tau(length_km, mu); }

double fiber_tau(double length_km, double mu) {
  if (!(length_km >= 0.0) || !(mu > 0.0)) fail(ErrorCode::domain, "fiber_tau: need length >= 0 and mu > 0");
  return std::pow(10.0, -length_km * mu / 10.0);
}

double bosonic_entropy(double nu) {
  if (nu <= 1.0 + 1e-12) return 0.0;
  const double p = 0.5 * (nu + 1.0), m = 0.5 * (nu - 1.0);
  return p * std::log2(p) - m * std::log2(m);
}

namespace {

// g(lo + gap) - g(lo) without cancellation for small gaps, which may lie
// below the resolution of lo itself.
double entropy_increment(double lo, double gap) {
  if (lo <= 1.0 + 1e-12 || gap > 1e-2 * (lo - 1.0)) return bosonic_entropy(lo + gap) - bosonic_entropy(lo);
  auto slope = [&](double t) {
    const double x = lo + gap * t;
    return 0.5 * std::log2((x + 1.0) / (x - 1.0));
  };
  return gap * boost::math::quadrature::gauss<double, 15>::integrate(slope, 0.0, 1.0);
}

}  // namespace

RateReport key_rate_from_cm(const CovarianceMatrix& cm) {
  if (!check_physical(cm)) fail(ErrorCode::domain, "key_rate_from_cm: unphysical covariance matrix");
  const Eigen::Matrix4d& g = cm.gamma;
  const double va = g(0, 0), vb = g(2, 2), cab = g(0, 2);

  RateReport r;
  r.mutual_info = -0.5 * std::log1p(-cab * cab / (va * vb)) / std::log(2.0);

  const Eigen::Vector2d nu = symplectic_eigenvalues(cm);
  // A conditioned on Bob's x: Schur complement with the pseudo-inverse of diag(vb, 0)
  const Eigen::Matrix2d a = g.topLeftCorner<2, 2>();
  const Eigen::Matrix2d c = g.topRightCorner<2, 2>();
  const Eigen::Matrix2d cond = a - (c.col(0) * c.col(0).transpose()) / vb;
  const double nu_cond = std::sqrt(std::max(cond.determinant(), 1.0));
  r.holevo = std::max(0.0, entropy_increment(nu_cond, nu(1) - nu_cond) + bosonic_entropy(nu(0)));
  r.raw_rate = r.mutual_info - r.holevo;
  r.normalized_by_resources = r.raw_rate;
  return r;
}

RateReport key_rate_symmetric(double c, double s) {
  const double d = c * c - s * s;
  if (!(c >= 1.0) || !(d >= 1.0 - 1e-12)) fail(ErrorCode::domain, "key_rate_symmetric: unphysical (C, S)");
  RateReport r;
  r.mutual_info = 0.5 * std::log2(c * c / d);
  r.holevo = bosonic_entropy(std::sqrt(std::max(d, 1.0)));
  r.raw_rate = r.mutual_info - r.holevo;
  r.normalized_by_resources = r.raw_rate;
  return r;
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 99; ++i) grid.push_back(0.01 * i);
  return grid;
}

double direct_rate_at(double lambda, double length_km, double mu) {
  if (!(lambda >= 0.0 && lambda < 1.0)) fail(ErrorCode::domain, "direct_rate_at: lambda must lie in [0, 1)");
  const double tau = fiber_tau(length_km, mu);
  // symplectic spectrum of the pure-loss CM in closed form: the environment
  // mode carries nu_e, Alice conditioned on Bob's x carries nu_c
  const double v = (1.0 + lambda * lambda) / (1.0 - lambda * lambda);
  const double vb = tau * v + 1.0 - tau;
  const double nu_e = (1.0 - tau) * v + tau;
  const double nu_c = std::sqrt(v * nu_e / vb);
  const double gap = nu_e * tau * (1.0 - tau) * (v - 1.0) * (v - 1.0) / (vb * (nu_e + nu_c));
  const double info = -0.5 * std::log1p(-tau * (v * v - 1.0) / (v * vb)) / std::log(2.0);
  return info - entropy_increment(nu_c, gap);
}

DirectRate direct_transmission_rate(double length_km, double mu, std::span<const double> lambda_grid) {
  const std::vector<double> fallback = lambda_grid.empty() ? default_lambda_grid() : std::vector<double>{};
  const std::span<const double> grid = lambda_grid.empty() ? std::span<const double>(fallback) : lambda_grid;
  DirectRate best{grid.front(), -INFINITY};
  for (double lambda : grid) {
    const double r = direct_rate_at(lambda, length_km, mu);
    if (r > best.rate) best = {lambda, r};
  }
  return best;
}

RateReport repeater_rate(RateReport raw, double n_qr) {
  if (!(n_qr >= 1.0)) fail(ErrorCode::domain, "repeater_rate: n_qr must be >= 1, got " + std::to_string(n_qr));
  raw.n_qr = n_qr;
  raw.normalized_by_resources = raw.raw_rate / n_qr;
  return raw;
}

RateReport repeater_rate(double raw_rate, double n_qr) {
  RateReport r;
  r.raw_rate = raw_rate;
  r.mutual_info = raw_rate;
  return repeater_rate(r, n_qr);
}

}  // namespace cvqr
