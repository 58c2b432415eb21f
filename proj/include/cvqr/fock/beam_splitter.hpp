#pragma once

#include <vector>

namespace cvqr {

/// Amplitude alpha_{k,l|t} of |k-t, l+t> in U_BS |k,l> for a beam splitter of
/// intensity transmittance `tau`, with mode transformation
///   a^dag -> sqrt(tau) a^dag + sqrt(1-tau) b^dag,
///   b^dag -> sqrt(1-tau) a^dag - sqrt(tau) b^dag.
/// The coefficients are real and U_BS is an involution (U_BS^2 = 1).
/// Throws ErrorCode::domain for t outside [-l, k] or tau outside [0, 1].
double bs_coefficient(int k, int l, int t, double tau);

/// Cached alpha_{k,l|t} for all k, l <= max_photons at one transmittance.
class BsCoefficientTable {
 public:
  BsCoefficientTable(double tau, int max_photons);

  double tau() const noexcept { return tau_; }
  int max_photons() const noexcept { return max_photons_; }
  /// Requires -l <= t <= k.
  double operator()(int k, int l, int t) const noexcept {
    return values_[offset_[static_cast<std::size_t>(k * (max_photons_ + 1) + l)] +
                   static_cast<std::size_t>(t + l)];
  }

  /// Largest deviation of U^T U from the identity over all photon-number
  /// sectors N <= 2 * max_photons that fit entirely in the table.
  double max_orthogonality_defect() const;

 private:
  double tau_;
  int max_photons_;
  std::vector<std::size_t> offset_;
  std::vector<double> values_;
};

}  // namespace cvqr
