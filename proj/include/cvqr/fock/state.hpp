#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cvqr {

using cplx = std::complex<double>;

/// Dense density matrix over `modes` bosonic modes, each truncated at `cutoff`
/// photons. Basis kets |n_0, n_1, ...> are ordered with mode 0 as the most
/// significant digit (base cutoff+1). Elements are stored row-major.
///
/// The matrix may be sub-normalized: heralded branches keep their probability
/// mass in the trace until they are explicitly renormalized.
class FockState {
 public:
  FockState(int modes, int cutoff);

  static FockState vacuum(int modes, int cutoff);
  /// |psi><psi| for an amplitude vector of length dim().
  static FockState pure(int modes, int cutoff, std::span<const cplx> amplitudes);

  int modes() const noexcept { return modes_; }
  int cutoff() const noexcept { return cutoff_; }
  int levels() const noexcept { return cutoff_ + 1; }
  std::size_t dim() const noexcept { return dim_; }

  /// Row/column index of the ket with the given photon numbers (one per mode).
  std::size_t basis_index(std::span<const int> photons) const;
  /// Inverse of basis_index.
  std::vector<int> photons_of(std::size_t index) const;

  cplx& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * dim_ + col]; }
  const cplx& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * dim_ + col];
  }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }
  std::span<cplx> row(std::size_t r) noexcept { return {data_.data() + r * dim_, dim_}; }
  std::span<const cplx> row(std::size_t r) const noexcept { return {data_.data() + r * dim_, dim_}; }

  /// Real part of the trace (the heralding weight).
  double trace() const noexcept;
  void scale(double factor) noexcept;
  /// Divides by the trace; a zero trace is left untouched.
  void normalize() noexcept;

  /// max |rho_ij - conj(rho_ji)|
  double hermiticity_defect() const noexcept;
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;
  double max_eigenvalue() const;

 private:
  int modes_;
  int cutoff_;
  std::size_t dim_;
  std::vector<cplx> data_;
};

/// rho_a (x) rho_b with the modes of `a` first.
FockState tensor(const FockState& a, const FockState& b);

/// Two-mode state; element (k,l,a,b) is <k,l|rho|a,b>.
class TwoModeState : public FockState {
 public:
  explicit TwoModeState(int cutoff) : FockState(2, cutoff) {}
  /// Throws ErrorCode::domain unless `state` has exactly two modes.
  explicit TwoModeState(FockState state);

  static TwoModeState vacuum(int cutoff);

  std::size_t ket(int k, int l) const noexcept {
    return static_cast<std::size_t>(k) * static_cast<std::size_t>(levels()) + static_cast<std::size_t>(l);
  }
  cplx& at(int k, int l, int a, int b) noexcept { return (*this)(ket(k, l), ket(a, b)); }
  const cplx& at(int k, int l, int a, int b) const noexcept { return (*this)(ket(k, l), ket(a, b)); }

  double weight() const noexcept { return trace(); }
};

}  // namespace cvqr
