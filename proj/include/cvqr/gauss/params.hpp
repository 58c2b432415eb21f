#pragma once

#include <string_view>

#include "cvqr/fock/operations.hpp"
#include "cvqr/gauss/covariance.hpp"

namespace cvqr {

enum class Validity { valid, unphysical, epsilon_undefined };

std::string_view to_string(Validity v) noexcept;

/// Summary of the Gaussification fixed point reached from a state.
struct GaussParams {
  double epsilon = 0.0;     // rho_{10,10} / rho_{11,00}
  double Lambda = 0.0;      // rho_{11,00} / rho_{00,00}
  double lambda_inf = 0.0;  // epsilon + Lambda (1 - epsilon^2)
  double tau_inf = 1.0;     // (1 - epsilon^2) Lambda / lambda_inf
  Validity validity = Validity::valid;

  bool valid() const noexcept { return validity == Validity::valid; }
};

/// Gauss parameters of an F1 block.
/// Throws ErrorCode::domain if rho_{00,00} <= 0 and ErrorCode::epsilon_undefined
/// if rho_{11,00} = 0.
GaussParams gauss_params(const F1Matrix& f1);

/// Parameters of the lossy EPR state (lambda, tau), i.e. the inverse map.
GaussParams gauss_from_lambda_tau(double lambda_inf, double tau_inf);

/// Fixed-point covariance matrix, symmetric form with
///   C = (Lambda^2 (1 - eps^2) + 1) / ((1 - eps Lambda)^2 - Lambda^2),
///   S = 2 Lambda / ((1 - eps Lambda)^2 - Lambda^2).
/// Throws ErrorCode::divergent_fixed_point when the denominator is not positive.
CovarianceMatrix cm_from_gauss(const GaussParams& params);

}  // namespace cvqr
