#pragma once

// Complex-valued inner loops shared by the Fock-space contractions.
//
// Every kernel has a portable scalar reference implementation. Vectorized
// variants (AVX2+FMA on x86-64, NEON on AArch64) are compiled into separate
// translation units and selected at runtime from the CPU features.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace cvqr::simd {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2, neon };

struct KernelTable {
  Backend backend;
  std::string_view name;
  // y[i] += a * x[i]
  void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // y[i] += a * x[i] for real a
  void (*axpy_real)(double a, const cplx* x, cplx* y, std::size_t n);
  // sum_i conj(x[i]) * y[i]
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
};

const KernelTable& scalar_kernels();

/// Kernel table in use; the best supported backend unless overridden.
const KernelTable& active_kernels();

/// Overrides the backend for the whole process.
void set_active_kernels(const KernelTable& table);

/// All backends usable on this machine, scalar first.
std::vector<const KernelTable*> available_kernels();

/// Parses a backend name; returns nullptr when unknown or unsupported here.
const KernelTable* find_kernels(std::string_view name);

inline void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  active_kernels().axpy(a, x.data(), y.data(), x.size());
}

inline void axpy(double a, std::span<const cplx> x, std::span<cplx> y) {
  active_kernels().axpy_real(a, x.data(), y.data(), x.size());
}

inline cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
  return active_kernels().dotc(x.data(), y.data(), x.size());
}

namespace detail {
// Defined only in the translation units that are compiled for the target.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();
}  // namespace detail

}  // namespace cvqr::simd
