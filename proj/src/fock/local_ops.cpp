#include "local_ops.hpp"

#include <algorithm>

#include "cvqr/errors.hpp"
#include "cvqr/simd/kernels.hpp"

namespace cvqr::detail {
namespace {

struct RowMap {
  std::size_t out_dim = 1;
  std::vector<std::size_t> base;        // per input row: output index with zero local digits
  std::vector<std::size_t> local;       // per input row: local input index
  std::vector<std::size_t> out_offset;  // per local output index
};

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

RowMap build_row_map(int modes, int levels, std::span<const int> targets, int out_modes) {
  const auto n = static_cast<std::size_t>(levels);
  const int in_local = static_cast<int>(targets.size());
  std::vector<bool> removed(static_cast<std::size_t>(modes), false);
  for (int d = out_modes; d < in_local; ++d) removed[static_cast<std::size_t>(targets[d])] = true;

  // output stride of every kept input mode
  const int kept = modes - (in_local - out_modes);
  std::vector<std::size_t> out_stride(static_cast<std::size_t>(modes), 0);
  int position = 0;
  for (int p = 0; p < modes; ++p) {
    if (removed[static_cast<std::size_t>(p)]) continue;
    out_stride[static_cast<std::size_t>(p)] = ipow(n, kept - 1 - position);
    ++position;
  }

  RowMap map;
  map.out_dim = ipow(n, kept);
  const std::size_t in_dim = ipow(n, modes);
  map.base.resize(in_dim);
  map.local.resize(in_dim);
  std::vector<int> digits(static_cast<std::size_t>(modes));
  for (std::size_t r = 0; r < in_dim; ++r) {
    std::size_t rem = r;
    for (int p = modes - 1; p >= 0; --p) {
      digits[static_cast<std::size_t>(p)] = static_cast<int>(rem % n);
      rem /= n;
    }
    std::size_t local = 0;
    for (int d = 0; d < in_local; ++d) local = local * n + static_cast<std::size_t>(digits[targets[d]]);
    std::size_t base = 0;
    for (int p = 0; p < modes; ++p) {
      const bool is_target = std::find(targets.begin(), targets.end(), p) != targets.end();
      if (!is_target) base += static_cast<std::size_t>(digits[static_cast<std::size_t>(p)]) * out_stride[static_cast<std::size_t>(p)];
    }
    map.base[r] = base;
    map.local[r] = local;
  }

  const std::size_t local_out_dim = ipow(n, out_modes);
  map.out_offset.resize(local_out_dim);
  for (std::size_t i = 0; i < local_out_dim; ++i) {
    std::size_t rem = i;
    std::size_t offset = 0;
    for (int d = out_modes - 1; d >= 0; --d) {
      offset += (rem % n) * out_stride[static_cast<std::size_t>(targets[d])];
      rem /= n;
    }
    map.out_offset[i] = offset;
  }
  return map;
}

std::vector<cplx> apply_rows(const std::vector<cplx>& in, std::size_t cols, const RowMap& map,
                             const LocalOperator& op) {
  std::vector<cplx> out(map.out_dim * cols);
  const std::size_t rows = map.base.size();
  for (std::size_t r = 0; r < rows; ++r) {
    std::span<const cplx> src(in.data() + r * cols, cols);
    for (const LocalTerm& term : op.terms[map.local[r]]) {
      if (term.coef == cplx{}) continue;
      const std::size_t target = map.base[r] + map.out_offset[term.out];
      simd::axpy(term.coef, src, std::span<cplx>(out.data() + target * cols, cols));
    }
  }
  return out;
}

std::vector<cplx> conj_transpose(const std::vector<cplx>& in, std::size_t rows, std::size_t cols) {
  std::vector<cplx> out(in.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out[c * rows + r] = std::conj(in[r * cols + c]);
  }
  return out;
}

}  // namespace

FockState apply_local(const FockState& rho, std::span<const int> targets, const LocalOperator& op) {
  const int in_local = static_cast<int>(targets.size());
  if (in_local != op.in_modes || op.out_modes > op.in_modes) {
    fail(ErrorCode::domain, "apply_local: operator arity does not match targets");
  }
  for (int t : targets) {
    if (t < 0 || t >= rho.modes()) fail(ErrorCode::domain, "apply_local: mode index out of range");
    if (std::count(targets.begin(), targets.end(), t) != 1) {
      fail(ErrorCode::domain, "apply_local: target modes must be distinct");
    }
  }
  const RowMap map = build_row_map(rho.modes(), rho.levels(), targets, op.out_modes);
  const std::size_t dim = rho.dim();
  std::vector<cplx> data(rho.data().begin(), rho.data().end());

  std::vector<cplx> left = apply_rows(data, dim, map, op);                     // K rho
  std::vector<cplx> left_h = conj_transpose(left, map.out_dim, dim);           // rho^dag K^dag
  std::vector<cplx> both = apply_rows(left_h, map.out_dim, map, op);           // K rho^dag K^dag
  std::vector<cplx> result = conj_transpose(both, map.out_dim, map.out_dim);  // K rho K^dag

  FockState out(rho.modes() - (op.in_modes - op.out_modes), rho.cutoff());
  std::copy(result.begin(), result.end(), out.data().begin());
  return out;
}

}  // namespace cvqr::detail
