#pragma once

#include <Eigen/Core>
#include <array>
#include <limits>

#include "cvqr/fock/operations.hpp"
#include "cvqr/gauss/params.hpp"

namespace cvqr {

/// Result of a heralded protocol step.
struct HeraldedOutcome {
  TwoModeState state;  // normalized
  double p_succ = 1.0;
  int consumed = 1;  // input two-mode states used
  int ancillas = 0;  // single photons used
  /// Set when the output has no Gaussification fixed point (or it is unphysical).
  bool divergent = false;
  /// Largest off-pattern magnitude of the output low-photon block.
  double leakage = 0.0;
  /// gaussify only: max-abs distance between the output CM and the fixed point
  /// predicted from the input; NaN when not applicable.
  double fixed_point_distance = std::numeric_limits<double>::quiet_NaN();
};

/// (q|0> + |1>) / sqrt(1 + q^2). Any real q is accepted; q -> infinity gives |0>.
std::array<double, 2> xi_amplitudes(double q);

/// Diagonal Kraus operator of photon replacement: mix the mode with one photon
/// on a beam splitter of intensity transmittance tau_bs and herald one photon
/// in the ancilla output. Entry n is alpha_{n,1|0}(tau_bs), n = 0..max_photons.
Eigen::VectorXd photon_replacement_kraus(double tau_bs, int max_photons);

/// Photon replacement at a balanced beam splitter, the filter S.
/// Equals (n - 1) / sqrt(2^(n+1)) on |n>.
Eigen::VectorXd s_operator(int max_photons);

/// Amplitude ratio of the one- and zero-photon components under pr_distill,
/// beta(eta) = (2 eta^2 - 1) / eta for amplitude transmittance eta.
double pr_beta(double eta);

/// Mach-Zehnder with S in each arm on `mode_a`, `mode_b`, the second output
/// heralded on xi(q). The output mode takes the place of `mode_a`.
HeraldedState d_gadget(const FockState& state, int mode_a, int mode_b, double q);

/// Matrix v(x, y) = <xi(q_bar)| D(q) |x, y> for x, y <= cutoff.
Eigen::MatrixXd d_projection(double q, double q_bar, int cutoff);

/// One Gaussification round on two copies of rho: balanced beam splitter at
/// each node, vacuum heralded on one port.
HeraldedOutcome gaussify_step(const TwoModeState& rho);

/// `iterations` nested Gaussification rounds; consumed = 2^iterations and
/// p_succ is the product over the binary tree.
HeraldedOutcome gaussify(const TwoModeState& rho, int iterations);

/// Symmetric photon-replacement distillation with amplitude transmittance eta
/// (beam-splitter intensity transmittance eta^2) on both modes.
HeraldedOutcome pr_distill(const TwoModeState& rho, double eta);

/// Purifying distillation: D(q) at both nodes acting on two copies of rho.
/// Throws ErrorCode::structure_leak if the input or output leaves the F1
/// pattern (tolerances 1e-8 and 1e-6).
HeraldedOutcome purify_distill(const TwoModeState& rho, double q);

/// Non-Gaussian swap of left (modes 1,2) and right (modes 3,4): D(q) on
/// modes 2,3 followed by projection onto xi(-q). Output on modes 1,4.
HeraldedOutcome ng_swap(const TwoModeState& left, const TwoModeState& right, double q);

/// Covariance-level Gaussian swap: balanced beam splitter on the middle modes,
/// X homodyne on one output and P on the other, conditional update with the
/// Moore-Penrose inverse. The result does not depend on the outcomes.
/// Throws ErrorCode::domain for unphysical inputs.
CovarianceMatrix gaussian_swap_cm(const CovarianceMatrix& left, const CovarianceMatrix& right);

/// Chosen heralding parameter together with the predicted output.
struct Tuning {
  double value = 0.0;
  GaussParams predicted;
};

/// eta in (0, 1/sqrt(2)) such that pr_distill raises lambda_inf to the target.
/// Throws ErrorCode::parameter_infeasible when the target is out of reach.
Tuning tune_pr_eta(const TwoModeState& rho, double lambda_target);

/// q > 0 for purify_distill hitting lambda_target. Among several roots the one
/// with the largest tau_inf is returned.
Tuning tune_purify_q(const TwoModeState& rho, double lambda_target);

/// q > 0 for ng_swap hitting lambda_target, largest tau_inf among valid roots.
Tuning tune_swap_q(const TwoModeState& left, const TwoModeState& right, double lambda_target);

}  // namespace cvqr
