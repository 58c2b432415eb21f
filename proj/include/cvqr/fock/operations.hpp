#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "cvqr/fock/state.hpp"
#include "cvqr/gauss/covariance.hpp"

namespace cvqr {

/// Truncated two-mode squeezed vacuum sqrt(1-lambda^2) sum_k lambda^k |k,k>.
/// The state is not renormalized: weight() reports the truncated norm.
/// Throws ErrorCode::domain unless 0 <= lambda < 1.
TwoModeState make_epr(double lambda, int cutoff);

/// Pure-loss channel of intensity transmissivity `tau` on one mode, realized
/// by its Kraus family K_j|n> = sqrt(C(n,j) tau^(n-j) (1-tau)^j) |n-j>.
FockState apply_loss(const FockState& state, double tau, int mode);
TwoModeState apply_loss(const TwoModeState& state, double tau, int mode);

/// Lossy EPR source: the untruncated make_epr state sent through loss `tau` on
/// both modes, then truncated. Matrix elements are summed over the source
/// photon number to convergence, so only the output is cut off.
TwoModeState make_lossy_epr(double lambda, double tau, int cutoff);

/// Beam splitter of intensity transmittance `tau` between two modes, using the
/// convention of bs_coefficient. Components pushed beyond the cutoff are lost.
FockState apply_bs(const FockState& state, int mode_a, int mode_b, double tau);

/// K rho K^dagger for a single-mode operator given as a (levels x levels) matrix.
FockState apply_single_mode_op(const FockState& state, int mode, const Eigen::MatrixXcd& op);

struct HeraldedState {
  FockState state;     // normalized, one mode fewer than the input
  double probability;  // trace of the unnormalized branch
};

/// Projects `mode` onto the unit vector `ket` (amplitudes in the number basis,
/// at most cutoff+1 entries) and traces it out.
/// Throws ErrorCode::domain for a non-unit ket and ErrorCode::improbable_branch
/// when the branch trace is below 1e-15.
HeraldedState herald(const FockState& state, int mode, std::span<const cplx> ket);

/// Covariance matrix of a normalized two-mode state.
/// Throws ErrorCode::displaced_state when |<a>| or |<b>| exceeds 1e-8.
CovarianceMatrix second_moments(const TwoModeState& state);

/// Low-photon block in the basis {|00>, |01>, |10>, |11>}.
struct F1Matrix {
  double rho00_00 = 0.0;
  double rho01_01 = 0.0;
  double rho10_10 = 0.0;
  double rho11_00 = 0.0;
  double rho11_11 = 0.0;
  /// Largest magnitude of the block entries outside the pattern (including
  /// imaginary parts of the pattern entries).
  double off_pattern = 0.0;
};

F1Matrix extract_f1(const TwoModeState& state);

/// Largest violation of the lossy-EPR symmetry constraints
/// rho_{kl,ab} = rho_{lk,ba}, rho_{kl,ab} = 0 unless k-a = l-b, and realness.
double epr_symmetry_defect(const TwoModeState& state);

}  // namespace cvqr
