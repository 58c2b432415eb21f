#include "node_maps.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "cvqr/errors.hpp"
#include "cvqr/fock/beam_splitter.hpp"
#include "cvqr/protocol/ops.hpp"
#include "cvqr/simd/kernels.hpp"

namespace cvqr::detail {

NodeKraus gaussify_node(int cutoff) {
  const BsCoefficientTable bs(0.5, cutoff);
  NodeKraus k;
  for (int x = 0; x <= cutoff; ++x) {
    for (int y = 0; x + y <= cutoff; ++y) k.push_back({x + y, x, y, bs(x, y, -y)});
  }
  return k;
}

namespace {

// q-independent parts of the D(q) node: entries heralding |0> and |1>.
struct DNodeParts {
  NodeKraus vacuum;
  NodeKraus photon;
};

DNodeParts build_d_parts(int cutoff) {
  const int top = 2 * cutoff;
  const BsCoefficientTable bs(0.5, top);
  const Eigen::VectorXd s = s_operator(top);
  DNodeParts parts;
  for (int x = 0; x <= cutoff; ++x) {
    for (int y = 0; y <= cutoff; ++y) {
      const int n = x + y;
      for (int h = 0; h <= std::min(1, n); ++h) {
        if (n - h > cutoff) continue;
        double amp = 0.0;
        for (int arm = 0; arm <= n; ++arm) {
          // arm = photons in the second interferometer path
          const int t1 = arm - y;
          if (t1 < -y || t1 > x) continue;
          const double filtered = bs(x, y, t1) * s(n - arm) * s(arm);
          if (filtered == 0.0) continue;
          amp += filtered * bs(n - arm, arm, h - arm);
        }
        if (amp != 0.0) (h == 0 ? parts.vacuum : parts.photon).push_back({n - h, x, y, amp});
      }
    }
  }
  return parts;
}

const DNodeParts& d_parts(int cutoff) {
  static std::mutex guard;
  static std::map<int, std::unique_ptr<DNodeParts>> cache;
  const std::lock_guard lock(guard);
  auto& slot = cache[cutoff];
  if (!slot) slot = std::make_unique<DNodeParts>(build_d_parts(cutoff));
  return *slot;
}

}  // namespace

NodeKraus d_node(double q, int cutoff) {
  const auto xi = xi_amplitudes(q);
  const DNodeParts& parts = d_parts(cutoff);
  NodeKraus k;
  k.reserve(parts.vacuum.size() + parts.photon.size());
  for (const auto& t : parts.vacuum) {
    if (xi[0] != 0.0) k.push_back({t.out, t.x, t.y, xi[0] * t.coef});
  }
  for (const auto& t : parts.photon) k.push_back({t.out, t.x, t.y, xi[1] * t.coef});
  return k;
}

TwoModeState apply_node_maps(const TwoModeState& rho1, const TwoModeState& rho2, const NodeKraus& ka,
                             const NodeKraus& kb, int max_out) {
  if (rho1.cutoff() != rho2.cutoff()) fail(ErrorCode::domain, "apply_node_maps: cutoffs differ");
  const int cutoff = rho1.cutoff();
  const auto n = static_cast<std::size_t>(rho1.levels());
  const std::size_t n2 = n * n;
  max_out = std::min(max_out, cutoff);

  std::vector<std::vector<const NodeTerm*>> a_by(n), b_by(n);
  for (const auto& t : ka) {
    if (t.out <= max_out) a_by[static_cast<std::size_t>(t.out)].push_back(&t);
  }
  for (const auto& t : kb) {
    if (t.out <= max_out) b_by[static_cast<std::size_t>(t.out)].push_back(&t);
  }

  struct Pair {
    std::size_t r1, r2;
    double w;
  };
  std::vector<std::vector<Pair>> terms(n2);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto& list = terms[a * n + b];
      for (const NodeTerm* ta : a_by[a]) {
        for (const NodeTerm* tb : b_by[b]) {
          list.push_back({static_cast<std::size_t>(ta->x) * n + static_cast<std::size_t>(tb->x),
                          static_cast<std::size_t>(ta->y) * n + static_cast<std::size_t>(tb->y), ta->coef * tb->coef});
        }
      }
    }
  }

  TwoModeState out(cutoff);
  std::vector<cplx> t(n2 * n2);
  for (std::size_t row = 0; row < n2; ++row) {
    if (terms[row].empty()) continue;
    std::fill(t.begin(), t.end(), cplx{});
    // t[c1, c2] = sum w rho1[r1, c1] rho2[r2, c2]
    for (const Pair& p : terms[row]) {
      const auto src = rho2.row(p.r2);
      for (std::size_t c1 = 0; c1 < n2; ++c1) {
        const cplx v = p.w * rho1(p.r1, c1);
        if (v == cplx{}) continue;
        simd::axpy(v, src, std::span<cplx>(t.data() + c1 * n2, n2));
      }
    }
    for (std::size_t col = 0; col < n2; ++col) {
      cplx acc{};
      for (const Pair& p : terms[col]) acc += p.w * t[p.r1 * n2 + p.r2];
      out(row, col) = acc;
    }
  }
  return out;
}

TwoModeState joint_projection(const TwoModeState& left, const TwoModeState& right,
                              const std::vector<ProjectionTerm>& f, int max_out) {
  if (left.cutoff() != right.cutoff()) fail(ErrorCode::domain, "joint_projection: cutoffs differ");
  const int cutoff = left.cutoff();
  max_out = std::min(max_out, cutoff);
  TwoModeState out(cutoff);
  for (int i = 0; i <= max_out; ++i) {
    for (int alpha = 0; alpha <= max_out; ++alpha) {
      for (const auto& t : f) {
        for (const auto& u : f) {
          const cplx l = left.at(i, t.m, alpha, u.m);
          if (l == cplx{}) continue;
          const cplx w = t.coef * u.coef * l;
          for (int j = 0; j <= max_out; ++j) {
            for (int beta = 0; beta <= max_out; ++beta) out.at(i, j, alpha, beta) += w * right.at(t.n, j, u.n, beta);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace cvqr::detail
