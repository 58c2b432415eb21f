// NEON variants for AArch64, where Advanced SIMD is part of the base ISA.

#include "cvqr/simd/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

namespace cvqr::simd {
namespace {

// One complex number per register: [re, im].

void axpy_neon(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const float64x2_t ar = vdupq_n_f64(a.real());
  // [-ai, +ai] so that swapped [xi, xr] yields [-ai*xi, ai*xr]
  const float64x2_t ai = {-a.imag(), a.imag()};
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xp + 2 * i);
    const float64x2_t xs = vextq_f64(xv, xv, 1);
    float64x2_t yv = vld1q_f64(yp + 2 * i);
    yv = vfmaq_f64(yv, ar, xv);
    yv = vfmaq_f64(yv, ai, xs);
    vst1q_f64(yp + 2 * i, yv);
  }
}

void axpy_real_neon(double a, const cplx* x, cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const float64x2_t av = vdupq_n_f64(a);
  for (std::size_t i = 0; i < n; ++i) {
    vst1q_f64(yp + 2 * i, vfmaq_f64(vld1q_f64(yp + 2 * i), av, vld1q_f64(xp + 2 * i)));
  }
}

cplx dotc_neon(const cplx* x, const cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  float64x2_t acc_re = vdupq_n_f64(0.0);
  float64x2_t acc_im = vdupq_n_f64(0.0);
  const float64x2_t flip = {1.0, -1.0};
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xp + 2 * i);
    const float64x2_t yv = vld1q_f64(yp + 2 * i);
    acc_re = vfmaq_f64(acc_re, xv, yv);
    acc_im = vfmaq_f64(acc_im, vmulq_f64(xv, flip), vextq_f64(yv, yv, 1));
  }
  return {vaddvq_f64(acc_re), vaddvq_f64(acc_im)};
}

}  // namespace

namespace detail {
const KernelTable* neon_kernels() {
  static const KernelTable table{Backend::neon, "neon", &axpy_neon, &axpy_real_neon, &dotc_neon};
  return &table;
}
}  // namespace detail

}  // namespace cvqr::simd

#else

namespace cvqr::simd::detail {
const KernelTable* neon_kernels() { return nullptr; }
}  // namespace cvqr::simd::detail

#endif
