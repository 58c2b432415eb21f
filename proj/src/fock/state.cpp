#include "cvqr/fock/state.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "cvqr/errors.hpp"

namespace cvqr {
namespace {

std::size_t checked_dim(int modes, int cutoff) {
  if (modes < 0 || modes > 8) fail(ErrorCode::domain, "FockState: unsupported mode count " + std::to_string(modes));
  if (cutoff < 1) fail(ErrorCode::domain, "FockState: cutoff must be >= 1");
  std::size_t dim = 1;
  for (int i = 0; i < modes; ++i) dim *= static_cast<std::size_t>(cutoff + 1);
  return dim;
}

Eigen::VectorXd hermitian_spectrum(const FockState& s) {
  const auto n = static_cast<Eigen::Index>(s.dim());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      m(r, c) = 0.5 * (s(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) +
                       std::conj(s(static_cast<std::size_t>(c), static_cast<std::size_t>(r))));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

FockState::FockState(int modes, int cutoff)
    : modes_(modes), cutoff_(cutoff), dim_(checked_dim(modes, cutoff)), data_(dim_ * dim_) {}

FockState FockState::vacuum(int modes, int cutoff) {
  FockState s(modes, cutoff);
  s(0, 0) = 1.0;
  return s;
}

FockState FockState::pure(int modes, int cutoff, std::span<const cplx> amplitudes) {
  FockState s(modes, cutoff);
  if (amplitudes.size() != s.dim()) fail(ErrorCode::domain, "FockState::pure: amplitude length mismatch");
  for (std::size_t r = 0; r < s.dim(); ++r) {
    if (amplitudes[r] == cplx{}) continue;
    for (std::size_t c = 0; c < s.dim(); ++c) s(r, c) = amplitudes[r] * std::conj(amplitudes[c]);
  }
  return s;
}

std::size_t FockState::basis_index(std::span<const int> photons) const {
  if (static_cast<int>(photons.size()) != modes_) fail(ErrorCode::domain, "basis_index: wrong number of modes");
  std::size_t index = 0;
  for (int n : photons) {
    if (n < 0 || n > cutoff_) fail(ErrorCode::domain, "basis_index: photon number outside cutoff");
    index = index * static_cast<std::size_t>(levels()) + static_cast<std::size_t>(n);
  }
  return index;
}

std::vector<int> FockState::photons_of(std::size_t index) const {
  std::vector<int> photons(static_cast<std::size_t>(modes_));
  for (int p = modes_ - 1; p >= 0; --p) {
    photons[static_cast<std::size_t>(p)] = static_cast<int>(index % static_cast<std::size_t>(levels()));
    index /= static_cast<std::size_t>(levels());
  }
  return photons;
}

double FockState::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i).real();
  return t;
}

void FockState::scale(double factor) noexcept {
  for (cplx& v : data_) v *= factor;
}

void FockState::normalize() noexcept {
  const double t = trace();
  if (t != 0.0) scale(1.0 / t);
}

double FockState::hermiticity_defect() const noexcept {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    }
  }
  return worst;
}

double FockState::min_eigenvalue() const { return hermitian_spectrum(*this).minCoeff(); }

double FockState::max_eigenvalue() const { return hermitian_spectrum(*this).maxCoeff(); }

FockState tensor(const FockState& a, const FockState& b) {
  if (a.cutoff() != b.cutoff()) fail(ErrorCode::domain, "tensor: cutoffs differ");
  FockState out(a.modes() + b.modes(), a.cutoff());
  const std::size_t db = b.dim();
  for (std::size_t r1 = 0; r1 < a.dim(); ++r1) {
    for (std::size_t c1 = 0; c1 < a.dim(); ++c1) {
      const cplx va = a(r1, c1);
      if (va == cplx{}) continue;
      for (std::size_t r2 = 0; r2 < db; ++r2) {
        for (std::size_t c2 = 0; c2 < db; ++c2) out(r1 * db + r2, c1 * db + c2) = va * b(r2, c2);
      }
    }
  }
  return out;
}

TwoModeState::TwoModeState(FockState state) : FockState(std::move(state)) {
  if (modes() != 2) fail(ErrorCode::domain, "TwoModeState: expected 2 modes, got " + std::to_string(modes()));
}

TwoModeState TwoModeState::vacuum(int cutoff) { return TwoModeState(FockState::vacuum(2, cutoff)); }

}  // namespace cvqr
