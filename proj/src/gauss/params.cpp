#include "cvqr/gauss/params.hpp"

#include <cmath>
#include <string>

#include "cvqr/errors.hpp"

namespace cvqr {
namespace {

double fixed_point_denominator(double eps, double lam) {
  const double a = 1.0 - eps * lam;
  return a * a - lam * lam;
}

Validity classify(const GaussParams& p) {
  if (!std::isfinite(p.epsilon) || !std::isfinite(p.Lambda)) return Validity::unphysical;
  if (!(p.lambda_inf >= 0.0 && p.lambda_inf < 1.0)) return Validity::unphysical;
  if (fixed_point_denominator(p.epsilon, p.Lambda) <= 0.0) return Validity::unphysical;
  return check_physical(cm_from_gauss(p)) ? Validity::valid : Validity::unphysical;
}

}  // namespace

std::string_view to_string(Validity v) noexcept {
  switch (v) {
    case Validity::valid: return "valid";
    case Validity::unphysical: return "unphysical";
    case Validity::epsilon_undefined: return "epsilon-undefined";
  }
  return "unknown";
}

GaussParams gauss_params(const F1Matrix& f1) {
  if (!(f1.rho00_00 > 0.0)) fail(ErrorCode::domain, "gauss_params: rho_00,00 must be positive");
  if (f1.rho11_00 == 0.0) fail(ErrorCode::epsilon_undefined, "gauss_params: rho_11,00 = 0, epsilon undefined");
  GaussParams p;
  p.epsilon = f1.rho10_10 / f1.rho11_00;
  p.Lambda = f1.rho11_00 / f1.rho00_00;
  p.lambda_inf = p.epsilon + p.Lambda * (1.0 - p.epsilon * p.epsilon);
  p.tau_inf = (1.0 - p.epsilon * p.epsilon) * p.Lambda / p.lambda_inf;
  p.validity = classify(p);
  return p;
}

GaussParams gauss_from_lambda_tau(double lambda_inf, double tau_inf) {
  if (!(lambda_inf > 0.0 && lambda_inf < 1.0) || !(tau_inf > 0.0 && tau_inf <= 1.0)) {
    fail(ErrorCode::domain, "gauss_from_lambda_tau: need 0 < lambda < 1 and 0 < tau <= 1");
  }
  GaussParams p;
  p.epsilon = lambda_inf * (1.0 - tau_inf);
  p.Lambda = lambda_inf * tau_inf / (1.0 - p.epsilon * p.epsilon);
  p.lambda_inf = lambda_inf;
  p.tau_inf = tau_inf;
  p.validity = classify(p);
  return p;
}

CovarianceMatrix cm_from_gauss(const GaussParams& params) {
  const double eps = params.epsilon;
  const double lam = params.Lambda;
  const double den = fixed_point_denominator(eps, lam);
  if (!(den > 0.0)) {
    fail(ErrorCode::divergent_fixed_point,
         "cm_from_gauss: (1 - eps*Lambda)^2 <= Lambda^2, Gaussification has no fixed point");
  }
  const double c = (lam * lam * (1.0 - eps * eps) + 1.0) / den;
  const double s = 2.0 * lam / den;
  return CovarianceMatrix::symmetric(c, s);
}

}  // namespace cvqr
