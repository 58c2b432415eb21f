#include "cvqr/protocol/ops.hpp"

#include <Eigen/QR>
#include <cmath>
#include <string>
#include <utility>

#include "cvqr/errors.hpp"
#include "cvqr/fock/beam_splitter.hpp"
#include "fock/local_ops.hpp"
#include "node_maps.hpp"

namespace cvqr {
namespace {

HeraldedOutcome finish(TwoModeState raw, const char* who, int consumed, int ancillas) {
  const double p = raw.trace();
  if (!(p >= 1e-15)) {
    fail(ErrorCode::improbable_branch, std::string(who) + ": success probability " + std::to_string(p) + " below 1e-15");
  }
  raw.scale(1.0 / p);
  HeraldedOutcome out{std::move(raw)};
  out.p_succ = p;
  out.consumed = consumed;
  out.ancillas = ancillas;
  out.leakage = extract_f1(out.state).off_pattern;
  return out;
}

// Output has Gauss parameters that fail the physicality test.
bool unphysical_fixed_point(const TwoModeState& s) {
  const F1Matrix f = extract_f1(s);
  if (!(f.rho00_00 > 0.0) || f.rho11_00 == 0.0) return false;
  return !gauss_params(f).valid();
}

}  // namespace

std::array<double, 2> xi_amplitudes(double q) {
  if (std::isnan(q)) fail(ErrorCode::domain, "xi_amplitudes: q is NaN");
  if (std::isinf(q)) return {q > 0 ? 1.0 : -1.0, 0.0};
  const double r = std::hypot(1.0, q);
  return {q / r, 1.0 / r};
}

Eigen::VectorXd photon_replacement_kraus(double tau_bs, int max_photons) {
  if (!(tau_bs >= 0.0 && tau_bs <= 1.0)) fail(ErrorCode::domain, "photon_replacement_kraus: tau outside [0, 1]");
  const BsCoefficientTable bs(tau_bs, std::max(max_photons, 1));
  Eigen::VectorXd k(max_photons + 1);
  for (int n = 0; n <= max_photons; ++n) k(n) = bs(n, 1, 0);
  return k;
}

Eigen::VectorXd s_operator(int max_photons) {
  if (max_photons < 2) fail(ErrorCode::domain, "s_operator: need at least two photons of room");
  return photon_replacement_kraus(0.5, max_photons);
}

double pr_beta(double eta) { return (2.0 * eta * eta - 1.0) / eta; }

HeraldedState d_gadget(const FockState& state, int mode_a, int mode_b, double q) {
  const int levels = state.levels();
  detail::LocalOperator op;
  op.in_modes = 2;
  op.out_modes = 1;
  op.terms.resize(static_cast<std::size_t>(levels * levels));
  for (const auto& t : detail::d_node(q, state.cutoff())) {
    op.terms[static_cast<std::size_t>(t.x * levels + t.y)].push_back({static_cast<std::size_t>(t.out), t.coef});
  }
  const std::array<int, 2> targets{mode_a, mode_b};
  FockState branch = detail::apply_local(state, targets, op);
  const double p = branch.trace();
  if (!(p >= 1e-15)) fail(ErrorCode::improbable_branch, "d_gadget: success probability below 1e-15");
  branch.scale(1.0 / p);
  return {std::move(branch), p};
}

Eigen::MatrixXd d_projection(double q, double q_bar, int cutoff) {
  const auto xi = xi_amplitudes(q_bar);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(cutoff + 1, cutoff + 1);
  for (const auto& t : detail::d_node(q, cutoff)) {
    if (t.out <= 1) v(t.x, t.y) += xi[static_cast<std::size_t>(t.out)] * t.coef;
  }
  return v;
}

HeraldedOutcome gaussify_step(const TwoModeState& rho) {
  const auto node = detail::gaussify_node(rho.cutoff());
  auto out = finish(detail::apply_node_maps(rho, rho, node, node, rho.cutoff()), "gaussify_step", 2, 0);
  out.divergent = unphysical_fixed_point(out.state);
  return out;
}

HeraldedOutcome gaussify(const TwoModeState& rho, int iterations) {
  if (iterations < 0) fail(ErrorCode::domain, "gaussify: negative iteration count");
  HeraldedOutcome out{rho};
  out.leakage = extract_f1(rho).off_pattern;
  for (int i = 0; i < iterations; ++i) {
    HeraldedOutcome step = gaussify_step(out.state);
    step.p_succ *= out.p_succ * out.p_succ;
    step.consumed = 2 * out.consumed;
    out = std::move(step);
  }
  try {
    const auto predicted = cm_from_gauss(gauss_params(extract_f1(rho)));
    out.fixed_point_distance = (second_moments(out.state).gamma - predicted.gamma).cwiseAbs().maxCoeff();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::divergent_fixed_point) out.divergent = true;
  }
  return out;
}

HeraldedOutcome pr_distill(const TwoModeState& rho, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) fail(ErrorCode::domain, "pr_distill: eta must lie in (0, 1]");
  const Eigen::VectorXd k = photon_replacement_kraus(eta * eta, rho.cutoff());
  const int n = rho.levels();
  TwoModeState raw(rho.cutoff());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) raw.at(a, b, c, d) = k(a) * k(b) * k(c) * k(d) * rho.at(a, b, c, d);
      }
    }
  }
  auto out = finish(std::move(raw), "pr_distill", 1, 2);
  const F1Matrix f = extract_f1(out.state);
  if (f.rho00_00 > 0.0 && f.rho11_00 != 0.0) {
    const double eps = f.rho10_10 / f.rho11_00;
    out.divergent = f.rho11_00 / f.rho00_00 >= 1.0 / (1.0 + eps);
  }
  return out;
}

HeraldedOutcome purify_distill(const TwoModeState& rho, double q) {
  const double in_leak = extract_f1(rho).off_pattern;
  if (in_leak > 1e-8) {
    fail(ErrorCode::structure_leak, "purify_distill: input leaves the F1 pattern by " + std::to_string(in_leak));
  }
  const auto node = detail::d_node(q, rho.cutoff());
  auto out = finish(detail::purify_branches(rho, node, rho.cutoff()), "purify_distill", 2, 4);
  if (out.leakage > 1e-6) {
    fail(ErrorCode::structure_leak, "purify_distill: output leaves the F1 pattern by " + std::to_string(out.leakage));
  }
  out.divergent = unphysical_fixed_point(out.state);
  return out;
}

namespace detail {

std::vector<ProjectionTerm> swap_functional(double q, int cutoff) {
  const Eigen::MatrixXd v = d_projection(q, -q, cutoff);
  std::vector<ProjectionTerm> f;
  for (int m = 0; m <= cutoff; ++m) {
    for (int n = 0; n <= cutoff; ++n) {
      if (v(m, n) != 0.0) f.push_back({m, n, v(m, n)});
    }
  }
  return f;
}

TwoModeState swap_branches(const TwoModeState& left, const TwoModeState& right, double q, int max_out) {
  // Exchanging the roles of the two interferometer outputs (xi(q) on the
  // first, xi(-q) on the second) heralds the functional with m and n swapped.
  auto f = swap_functional(q, left.cutoff());
  TwoModeState out = joint_projection(left, right, f, max_out);
  for (auto& t : f) std::swap(t.m, t.n);
  const TwoModeState other = joint_projection(left, right, f, max_out);
  auto dst = out.data();
  auto src = other.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  return out;
}

TwoModeState purify_branches(const TwoModeState& rho, const NodeKraus& node, int max_out) {
  // Each node may herald on either interferometer output; the exchanged
  // pattern acts as the node map with its inputs swapped. With two identical
  // copies, (swapped, swapped) equals (plain, plain) and the mixed patterns
  // coincide, so four patterns reduce to two maps counted twice.
  NodeKraus swapped = node;
  for (auto& t : swapped) std::swap(t.x, t.y);
  TwoModeState out = apply_node_maps(rho, rho, node, node, max_out);
  const TwoModeState mixed = apply_node_maps(rho, rho, swapped, node, max_out);
  auto dst = out.data();
  auto src = mixed.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = 2.0 * (dst[i] + src[i]);
  return out;
}

}  // namespace detail

HeraldedOutcome ng_swap(const TwoModeState& left, const TwoModeState& right, double q) {
  auto out = finish(detail::swap_branches(left, right, q, left.cutoff()), "ng_swap", 2, 4);
  out.divergent = unphysical_fixed_point(out.state);
  return out;
}

CovarianceMatrix gaussian_swap_cm(const CovarianceMatrix& left, const CovarianceMatrix& right) {
  if (!check_physical(left) || !check_physical(right)) fail(ErrorCode::domain, "gaussian_swap_cm: unphysical input");
  using Mat8 = Eigen::Matrix<double, 8, 8>;
  Mat8 g = Mat8::Zero();
  g.topLeftCorner<4, 4>() = left.gamma;
  g.bottomRightCorner<4, 4>() = right.gamma;
  // balanced beam splitter on modes 2 and 3 acts identically on x and p
  Mat8 s = Mat8::Identity();
  const double h = std::sqrt(0.5);
  for (int quad = 0; quad < 2; ++quad) {
    const int i = 2 + quad, j = 4 + quad;
    s(i, i) = h;
    s(i, j) = h;
    s(j, i) = h;
    s(j, j) = -h;
  }
  const Mat8 gs = s * g * s.transpose();
  // keep (x1, p1, x4, p4); measure p of mode 2 and x of mode 3
  const std::array<int, 4> keep{0, 1, 6, 7};
  const std::array<int, 2> meas{3, 4};
  Eigen::Matrix4d a;
  Eigen::Matrix<double, 4, 2> c;
  Eigen::Matrix2d b;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) a(i, j) = gs(keep[i], keep[j]);
    for (int j = 0; j < 2; ++j) c(i, j) = gs(keep[i], meas[j]);
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) b(i, j) = gs(meas[i], meas[j]);
  }
  const Eigen::Matrix2d b_pinv = Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix2d>(b).pseudoInverse();
  CovarianceMatrix out;
  out.gamma = a - c * b_pinv * c.transpose();
  out.gamma = 0.5 * (out.gamma + out.gamma.transpose()).eval();
  return out;
}

}  // namespace cvqr
