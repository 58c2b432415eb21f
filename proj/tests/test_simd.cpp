#include <doctest.h>

#include <random>

#include "cvqr/simd/kernels.hpp"

using cvqr::simd::cplx;

namespace {

std::vector<cplx> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("every available backend matches the scalar reference") {
  const auto& ref = cvqr::simd::scalar_kernels();
  std::mt19937_64 rng(7);
  for (const auto* table : cvqr::simd::available_kernels()) {
    CAPTURE(table->name);
    // lengths straddle the vector widths and remainders
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 81u, 6561u}) {
      const auto x = random_vector(rng, n);
      const auto y0 = random_vector(rng, n);
      const cplx a{0.37, -1.21};

      auto y_ref = y0, y_vec = y0;
      ref.axpy(a, x.data(), y_ref.data(), n);
      table->axpy(a, x.data(), y_vec.data(), n);
      CHECK(max_diff(y_ref, y_vec) <= 1e-13);

      y_ref = y0;
      y_vec = y0;
      ref.axpy_real(-0.83, x.data(), y_ref.data(), n);
      table->axpy_real(-0.83, x.data(), y_vec.data(), n);
      CHECK(max_diff(y_ref, y_vec) <= 1e-13);

      const cplx d_ref = ref.dotc(x.data(), y0.data(), n);
      const cplx d_vec = table->dotc(x.data(), y0.data(), n);
      CHECK(std::abs(d_ref - d_vec) <= 1e-12 * (1.0 + static_cast<double>(n)));
    }
  }
}

TEST_CASE("backend lookup by name") {
  CHECK(cvqr::simd::find_kernels("scalar") == &cvqr::simd::scalar_kernels());
  CHECK(cvqr::simd::find_kernels("bogus") == nullptr);
  CHECK(!cvqr::simd::available_kernels().empty());
}
