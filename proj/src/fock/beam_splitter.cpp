#include "cvqr/fock/beam_splitter.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cvqr/errors.hpp"

namespace cvqr {
namespace {

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double log_binomial(int n, int k) { return log_factorial(n) - log_factorial(k) - log_factorial(n - k); }

// tau^(e/2), with 0^0 = 1
double half_power(double base, int exponent) {
  if (exponent == 0) return 1.0;
  if (base == 0.0) return 0.0;
  return std::pow(base, 0.5 * exponent);
}

}  // namespace

double bs_coefficient(int k, int l, int t, double tau) {
  if (k < 0 || l < 0) fail(ErrorCode::domain, "bs_coefficient: negative photon number");
  if (t < -l || t > k) {
    fail(ErrorCode::domain, "bs_coefficient: transfer t=" + std::to_string(t) + " outside [" +
                                std::to_string(-l) + ", " + std::to_string(k) + "]");
  }
  if (!(tau >= 0.0 && tau <= 1.0)) fail(ErrorCode::domain, "bs_coefficient: tau outside [0, 1]");

  const double prefactor = 0.5 * (log_factorial(k - t) + log_factorial(l + t) - log_factorial(k) -
                                  log_factorial(l));
  const int m_lo = std::max(0, -t);
  const int m_hi = std::min(l, k - t);
  double sum = 0.0;
  for (int m = m_lo; m <= m_hi; ++m) {
    const double magnitude = std::exp(prefactor + log_binomial(k, m + t) + log_binomial(l, m)) *
                             half_power(tau, k + l - 2 * m - t) * half_power(1.0 - tau, 2 * m + t);
    sum += ((l - m) % 2 == 0) ? magnitude : -magnitude;
  }
  return sum;
}

BsCoefficientTable::BsCoefficientTable(double tau, int max_photons)
    : tau_(tau), max_photons_(max_photons) {
  if (max_photons < 0) fail(ErrorCode::domain, "BsCoefficientTable: negative photon bound");
  const int levels = max_photons + 1;
  offset_.resize(static_cast<std::size_t>(levels * levels));
  for (int k = 0; k < levels; ++k) {
    for (int l = 0; l < levels; ++l) {
      offset_[static_cast<std::size_t>(k * levels + l)] = values_.size();
      for (int t = -l; t <= k; ++t) values_.push_back(bs_coefficient(k, l, t, tau));
    }
  }
}

double BsCoefficientTable::max_orthogonality_defect() const {
  // Sector N is complete in the table when N <= max_photons.
  double worst = 0.0;
  for (int total = 0; total <= max_photons_; ++total) {
    // column j = input k (l = total-k); row i = output photons in mode a
    for (int k1 = 0; k1 <= total; ++k1) {
      for (int k2 = 0; k2 <= total; ++k2) {
        double dot = 0.0;
        for (int out = 0; out <= total; ++out) {
          dot += (*this)(k1, total - k1, k1 - out) * (*this)(k2, total - k2, k2 - out);
        }
        worst = std::max(worst, std::abs(dot - (k1 == k2 ? 1.0 : 0.0)));
      }
    }
  }
  return worst;
}

}  // namespace cvqr
