#include "cvqr/fock/operations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "cvqr/errors.hpp"
#include "cvqr/fock/beam_splitter.hpp"
#include "local_ops.hpp"

namespace cvqr {
namespace {

void require_tau(double tau, const char* who) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    fail(ErrorCode::domain, std::string(who) + ": transmissivity " + std::to_string(tau) + " outside [0, 1]");
  }
}

detail::LocalOperator loss_kraus(int levels, double tau, int lost) {
  detail::LocalOperator op;
  op.terms.resize(static_cast<std::size_t>(levels));
  for (int n = lost; n < levels; ++n) {
    const double log_amp = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(lost + 1.0) - std::lgamma(n - lost + 1.0));
    double amp = std::exp(log_amp);
    if (n - lost > 0) amp *= std::pow(tau, 0.5 * (n - lost));
    if (lost > 0) amp *= std::pow(1.0 - tau, 0.5 * lost);
    op.terms[static_cast<std::size_t>(n)].push_back({static_cast<std::size_t>(n - lost), amp});
  }
  return op;
}

}  // namespace

TwoModeState make_epr(double lambda, int cutoff) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    fail(ErrorCode::domain, "make_epr: lambda must lie in [0, 1), got " + std::to_string(lambda));
  }
  TwoModeState s(cutoff);
  const double norm = std::sqrt(1.0 - lambda * lambda);
  std::vector<double> amp(static_cast<std::size_t>(cutoff + 1));
  for (int k = 0; k <= cutoff; ++k) amp[static_cast<std::size_t>(k)] = norm * std::pow(lambda, k);
  for (int k = 0; k <= cutoff; ++k) {
    for (int a = 0; a <= cutoff; ++a) s.at(k, k, a, a) = amp[static_cast<std::size_t>(k)] * amp[static_cast<std::size_t>(a)];
  }
  return s;
}

FockState apply_loss(const FockState& state, double tau, int mode) {
  require_tau(tau, "apply_loss");
  if (tau == 1.0) return state;
  FockState out(state.modes(), state.cutoff());
  const std::array<int, 1> targets{mode};
  for (int lost = 0; lost < state.levels(); ++lost) {
    if (tau == 0.0 && lost == 0) continue;
    const FockState branch = detail::apply_local(state, targets, loss_kraus(state.levels(), tau, lost));
    auto dst = out.data();
    auto src = branch.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  }
  return out;
}

TwoModeState apply_loss(const TwoModeState& state, double tau, int mode) {
  return TwoModeState(apply_loss(static_cast<const FockState&>(state), tau, mode));
}

TwoModeState make_lossy_epr(double lambda, double tau, int cutoff) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    fail(ErrorCode::domain, "make_lossy_epr: lambda must lie in [0, 1), got " + std::to_string(lambda));
  }
  require_tau(tau, "make_lossy_epr");
  TwoModeState s(cutoff);
  if (lambda == 0.0 || tau == 0.0) {
    s.at(0, 0, 0, 0) = 1.0;
    return s;
  }
  // log of sqrt(C(n, k) tau^k (1-tau)^(n-k)), amplitude for n -> k photons
  const double lt = std::log(tau);
  const double lr = tau < 1.0 ? std::log1p(-tau) : 0.0;
  auto log_amp = [&](int n, int k) {
    if (tau == 1.0) return n == k ? 0.0 : -std::numeric_limits<double>::infinity();
    return 0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * lt + (n - k) * lr);
  };
  const double ll = std::log(lambda);
  const double norm = std::log1p(-lambda * lambda);
  // Only k - a = l - b survives; the source photon number n runs to convergence
  // so that truncation acts on the output rather than on the source.
  for (int k = 0; k <= cutoff; ++k) {
    for (int l = 0; l <= cutoff; ++l) {
      for (int a = 0; a <= cutoff; ++a) {
        const int b = l - k + a;
        if (b < 0 || b > cutoff) continue;
        double sum = 0.0;
        for (int n = std::max(k, l);; ++n) {
          const int m = n - k + a;
          if (m < std::max(a, b)) continue;
          const double lg = norm + (n + m) * ll + log_amp(n, k) + log_amp(m, a) + log_amp(n, l) + log_amp(m, b);
          const double term = std::exp(lg);
          sum += term;
          if (tau == 1.0 || (term < 1e-18 * sum && n > std::max(k, l) + 8) || n > 20000) break;
        }
        s.at(k, l, a, b) = sum;
      }
    }
  }
  return s;
}

FockState apply_bs(const FockState& state, int mode_a, int mode_b, double tau) {
  require_tau(tau, "apply_bs");
  if (mode_a == mode_b) fail(ErrorCode::domain, "apply_bs: modes must be distinct");
  const int levels = state.levels();
  const BsCoefficientTable table(tau, state.cutoff());
  detail::LocalOperator op;
  op.in_modes = 2;
  op.out_modes = 2;
  op.terms.resize(static_cast<std::size_t>(levels * levels));
  for (int k = 0; k < levels; ++k) {
    for (int l = 0; l < levels; ++l) {
      auto& terms = op.terms[static_cast<std::size_t>(k * levels + l)];
      for (int t = -l; t <= k; ++t) {
        if (k - t >= levels || l + t >= levels) continue;
        terms.push_back({static_cast<std::size_t>((k - t) * levels + (l + t)), table(k, l, t)});
      }
    }
  }
  const std::array<int, 2> targets{mode_a, mode_b};
  return detail::apply_local(state, targets, op);
}

FockState apply_single_mode_op(const FockState& state, int mode, const Eigen::MatrixXcd& matrix) {
  const int levels = state.levels();
  if (matrix.rows() != levels || matrix.cols() != levels) {
    fail(ErrorCode::domain, "apply_single_mode_op: operator must be (cutoff+1) x (cutoff+1)");
  }
  detail::LocalOperator op;
  op.terms.resize(static_cast<std::size_t>(levels));
  for (int j = 0; j < levels; ++j) {
    for (int i = 0; i < levels; ++i) {
      if (matrix(i, j) != cplx{}) op.terms[static_cast<std::size_t>(j)].push_back({static_cast<std::size_t>(i), matrix(i, j)});
    }
  }
  const std::array<int, 1> targets{mode};
  return detail::apply_local(state, targets, op);
}

HeraldedState herald(const FockState& state, int mode, std::span<const cplx> ket) {
  if (ket.empty() || static_cast<int>(ket.size()) > state.levels()) {
    fail(ErrorCode::domain, "herald: projector length must be in [1, cutoff+1]");
  }
  double norm2 = 0.0;
  for (cplx v : ket) norm2 += std::norm(v);
  if (std::abs(norm2 - 1.0) > 1e-12) fail(ErrorCode::domain, "herald: projector must have unit norm");

  detail::LocalOperator op;
  op.out_modes = 0;
  op.terms.resize(static_cast<std::size_t>(state.levels()));
  for (std::size_t j = 0; j < ket.size(); ++j) op.terms[j].push_back({0, std::conj(ket[j])});
  const std::array<int, 1> targets{mode};
  FockState branch = detail::apply_local(state, targets, op);
  const double p = branch.trace();
  if (!(p >= 1e-15)) {
    fail(ErrorCode::improbable_branch, "herald: branch probability " + std::to_string(p) + " below 1e-15");
  }
  branch.scale(1.0 / p);
  return {std::move(branch), p};
}

CovarianceMatrix second_moments(const TwoModeState& s) {
  const int n = s.levels();
  cplx a{}, b{}, aa{}, bb{}, ab{}, adag_b{};
  double na = 0.0, nb = 0.0;
  // <O> = sum_{r,c} rho_{r,c} O_{c,r}
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const double sk = std::sqrt(static_cast<double>(k));
      const double sl = std::sqrt(static_cast<double>(l));
      na += k * s.at(k, l, k, l).real();
      nb += l * s.at(k, l, k, l).real();
      if (k >= 1) a += sk * s.at(k, l, k - 1, l);
      if (l >= 1) b += sl * s.at(k, l, k, l - 1);
      if (k >= 2) aa += sk * std::sqrt(k - 1.0) * s.at(k, l, k - 2, l);
      if (l >= 2) bb += sl * std::sqrt(l - 1.0) * s.at(k, l, k, l - 2);
      if (k >= 1 && l >= 1) ab += sk * sl * s.at(k, l, k - 1, l - 1);
      if (l >= 1 && k + 1 < n) adag_b += std::sqrt(k + 1.0) * sl * s.at(k, l, k + 1, l - 1);
    }
  }

  if (std::abs(a) > 1e-8 || std::abs(b) > 1e-8) {
    fail(ErrorCode::displaced_state, "second_moments: state has non-zero first moments");
  }
  const double mx1 = 2.0 * a.real(), mp1 = 2.0 * a.imag();
  const double mx2 = 2.0 * b.real(), mp2 = 2.0 * b.imag();
  const std::array<double, 4> mean{mx1, mp1, mx2, mp2};

  Eigen::Matrix4d g;
  g(0, 0) = 2.0 * aa.real() + 2.0 * na + 1.0;
  g(1, 1) = -2.0 * aa.real() + 2.0 * na + 1.0;
  g(0, 1) = 2.0 * aa.imag();
  g(2, 2) = 2.0 * bb.real() + 2.0 * nb + 1.0;
  g(3, 3) = -2.0 * bb.real() + 2.0 * nb + 1.0;
  g(2, 3) = 2.0 * bb.imag();
  g(0, 2) = 2.0 * ab.real() + 2.0 * adag_b.real();
  g(1, 3) = -2.0 * ab.real() + 2.0 * adag_b.real();
  g(0, 3) = 2.0 * ab.imag() + 2.0 * adag_b.imag();
  g(1, 2) = 2.0 * ab.imag() - 2.0 * adag_b.imag();
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      g(i, j) -= mean[static_cast<std::size_t>(i)] * mean[static_cast<std::size_t>(j)];
      g(j, i) = g(i, j);
    }
  }
  return CovarianceMatrix{g};
}

F1Matrix extract_f1(const TwoModeState& s) {
  F1Matrix f;
  f.rho00_00 = s.at(0, 0, 0, 0).real();
  f.rho01_01 = s.at(0, 1, 0, 1).real();
  f.rho10_10 = s.at(1, 0, 1, 0).real();
  f.rho11_00 = s.at(1, 1, 0, 0).real();
  f.rho11_11 = s.at(1, 1, 1, 1).real();
  // kets of the block in Kronecker order
  const std::array<std::array<int, 2>, 4> kets{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  double leak = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const cplx v = s.at(kets[i][0], kets[i][1], kets[j][0], kets[j][1]);
      const bool in_pattern = (i == j) || (i == 0 && j == 3) || (i == 3 && j == 0);
      leak = std::max(leak, in_pattern ? std::abs(v.imag()) : std::abs(v));
    }
  }
  f.off_pattern = leak;
  return f;
}

double epr_symmetry_defect(const TwoModeState& s) {
  const int n = s.levels();
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          const cplx v = s.at(k, l, a, b);
          worst = std::max(worst, std::abs(v - s.at(l, k, b, a)));
          worst = std::max(worst, std::abs(v.imag()));
          if (k - a != l - b) worst = std::max(worst, std::abs(v));
        }
      }
    }
  }
  return worst;
}

}  // namespace cvqr
