#pragma once

#include <span>
#include <vector>

#include "cvqr/gauss/covariance.hpp"

namespace cvqr {

/// Fiber attenuation model.
struct FiberModel {
  double mu = 0.2;  // dB per km
  double length_km = 0.0;

  double tau() const;
};

/// 10^(-length * mu / 10). Throws ErrorCode::domain for negative length or mu <= 0.
double fiber_tau(double length_km, double mu = 0.2);

/// Asymptotic reverse-reconciliation key rate in bits per state.
struct RateReport {
  double raw_rate = 0.0;  // mutual_info - holevo
  double normalized_by_resources = 0.0;  // raw_rate / n_qr
  double mutual_info = 0.0;
  double holevo = 0.0;
  double n_qr = 1.0;

  /// Non-positive raw rate: no key can be extracted.
  bool insecure() const noexcept { return !(raw_rate > 0.0); }
};

/// Von Neumann entropy of a thermal mode with symplectic eigenvalue nu >= 1.
double bosonic_entropy(double nu);

/// Homodyne (x quadrature), reverse reconciliation, collective attacks with
/// Eve purifying the state. Works on any physical 4x4 CM.
/// Throws ErrorCode::domain for unphysical input.
RateReport key_rate_from_cm(const CovarianceMatrix& cm);

/// Closed form for the symmetric block matrix [[C I, S Z], [S Z, C I]].
RateReport key_rate_symmetric(double c, double s);

/// Default squeezing grid for the direct-transmission baseline.
std::vector<double> default_lambda_grid();

/// Rate of an EPR source with one mode kept and the other sent over the fiber.
double direct_rate_at(double lambda, double length_km, double mu = 0.2);

struct DirectRate {
  double lambda = 0.0;
  double rate = 0.0;
};

/// Best direct_rate_at over `lambda_grid` (the default grid when empty).
DirectRate direct_transmission_rate(double length_km, double mu = 0.2, std::span<const double> lambda_grid = {});

/// Attaches the resource normalization. Throws ErrorCode::domain if n_qr < 1.
RateReport repeater_rate(RateReport raw, double n_qr);
RateReport repeater_rate(double raw_rate, double n_qr);

}  // namespace cvqr
