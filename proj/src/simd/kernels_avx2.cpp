// AVX2 + FMA variants. This file is compiled with -mavx2 -mfma and is only
// entered after a runtime CPU check.

#include "cvqr/simd/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace cvqr::simd {
namespace {

// Two complex numbers per register: [re0, im0, re1, im1].

void axpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(xp + 2 * i);
    const __m256d x1 = _mm256_loadu_pd(xp + 2 * i + 4);
    // swap re/im within each complex
    const __m256d s0 = _mm256_mul_pd(ai, _mm256_permute_pd(x0, 0b0101));
    const __m256d s1 = _mm256_mul_pd(ai, _mm256_permute_pd(x1, 0b0101));
    // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
    const __m256d p0 = _mm256_fmaddsub_pd(ar, x0, s0);
    const __m256d p1 = _mm256_fmaddsub_pd(ar, x1, s1);
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yp + 2 * i), p0));
    _mm256_storeu_pd(yp + 2 * i + 4, _mm256_add_pd(_mm256_loadu_pd(yp + 2 * i + 4), p1));
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d x0 = _mm256_loadu_pd(xp + 2 * i);
    const __m256d s0 = _mm256_mul_pd(ai, _mm256_permute_pd(x0, 0b0101));
    const __m256d p0 = _mm256_fmaddsub_pd(ar, x0, s0);
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yp + 2 * i), p0));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    y[i] = cplx(y[i].real() + (a.real() * xr - a.imag() * xi),
                y[i].imag() + (a.real() * xi + a.imag() * xr));
  }
}

void axpy_real_avx2(double a, const cplx* x, cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const std::size_t m = 2 * n;
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    _mm256_storeu_pd(yp + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(xp + i), _mm256_loadu_pd(yp + i)));
    _mm256_storeu_pd(yp + i + 4,
                     _mm256_fmadd_pd(av, _mm256_loadu_pd(xp + i + 4), _mm256_loadu_pd(yp + i + 4)));
  }
  for (; i + 4 <= m; i += 4) {
    _mm256_storeu_pd(yp + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(xp + i), _mm256_loadu_pd(yp + i)));
  }
  for (; i < m; ++i) yp[i] += a * xp[i];
}

cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  // acc_re lanes hold xr*yr and xi*yi; acc_im lanes hold xr*yi and -xi*yr
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  const __m256d flip = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    const __m256d ys = _mm256_permute_pd(yv, 0b0101);
    acc_im = _mm256_fmadd_pd(_mm256_mul_pd(xv, flip), ys, acc_im);
  }
  alignas(32) double re[4];
  alignas(32) double im[4];
  _mm256_store_pd(re, acc_re);
  _mm256_store_pd(im, acc_im);
  double sr = re[0] + re[1] + re[2] + re[3];
  double si = im[0] + im[1] + im[2] + im[3];
  for (; i < n; ++i) {
    sr += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    si += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {sr, si};
}

}  // namespace

namespace detail {
const KernelTable* avx2_kernels() {
  static const KernelTable table{Backend::avx2, "avx2", &axpy_avx2, &axpy_real_avx2, &dotc_avx2};
  return &table;
}
}  // namespace detail

}  // namespace cvqr::simd

#else

namespace cvqr::simd::detail {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace cvqr::simd::detail

#endif
