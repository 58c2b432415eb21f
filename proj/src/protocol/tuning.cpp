#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "cvqr/errors.hpp"
#include "cvqr/protocol/ops.hpp"
#include "node_maps.hpp"

namespace cvqr {
namespace {

std::optional<GaussParams> params_of(const TwoModeState& raw) {
  const F1Matrix f = extract_f1(raw);
  if (!(f.rho00_00 > 0.0) || f.rho11_00 == 0.0) return std::nullopt;
  return gauss_params(f);
}

double bisect_root(const std::function<double(double)>& g, double lo, double hi) {
  boost::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(g, lo, hi, boost::math::tools::eps_tolerance<double>(48), iters);
  return 0.5 * (r.first + r.second);
}

// Scans log q for crossings of lambda_inf(q) = target and keeps the valid root
// with the largest tau_inf.
Tuning best_q(const std::function<std::optional<GaussParams>(double)>& eval, double target, const char* who) {
  constexpr int points = 240;
  const double lo = std::log(1e-4), hi = std::log(1e4);
  auto g = [&](double lq) {
    const auto p = eval(std::exp(lq));
    return p ? p->lambda_inf - target : std::nan("");
  };
  std::optional<Tuning> best;
  double prev_x = lo, prev_g = g(lo);
  for (int i = 1; i <= points; ++i) {
    const double x = lo + (hi - lo) * i / points;
    const double gx = g(x);
    if (std::isfinite(prev_g) && std::isfinite(gx) && (prev_g == 0.0 || prev_g * gx < 0.0)) {
      const double root = prev_g == 0.0 ? prev_x : bisect_root(g, prev_x, x);
      const double q = std::exp(root);
      if (const auto p = eval(q); p && p->valid()) {
        if (!best || p->tau_inf > best->predicted.tau_inf) best = Tuning{q, *p};
      }
    }
    prev_x = x;
    prev_g = gx;
  }
  if (!best) {
    fail(ErrorCode::parameter_infeasible,
         std::string(who) + ": no q reaches lambda_inf = " + std::to_string(target) + " with a valid output");
  }
  return *best;
}

}  // namespace

Tuning tune_pr_eta(const TwoModeState& rho, double lambda_target) {
  const auto in = params_of(rho);
  if (!in) fail(ErrorCode::parameter_infeasible, "tune_pr_eta: input has no Gauss parameters");
  const F1Matrix f = extract_f1(rho);
  // the map is diagonal, so the output block follows from the Kraus entries
  auto eval = [&](double eta) {
    const Eigen::VectorXd k = photon_replacement_kraus(eta * eta, 1);
    F1Matrix o = f;
    const double k0 = k(0) * k(0), k1 = k(1) * k(1);
    o.rho00_00 = f.rho00_00 * k0 * k0;
    o.rho01_01 = f.rho01_01 * k0 * k1;
    o.rho10_10 = f.rho10_10 * k0 * k1;
    o.rho11_00 = f.rho11_00 * k0 * k1;
    o.rho11_11 = f.rho11_11 * k1 * k1;
    return gauss_params(o);
  };
  if (!(lambda_target > in->epsilon && lambda_target < 1.0)) {
    fail(ErrorCode::parameter_infeasible, "tune_pr_eta: target lambda_inf " + std::to_string(lambda_target) +
                                              " not above epsilon = " + std::to_string(in->epsilon));
  }
  const double turn = std::sqrt(0.5);
  // beta^2 sweeps (inf, 0) on (0, turn) and (0, 1) on (turn, 1]
  const bool raise = lambda_target > in->lambda_inf;
  double lo = raise ? 1e-9 : turn, hi = raise ? turn : 1.0;
  auto g = [&](double eta) { return eval(eta).lambda_inf - lambda_target; };
  if (g(lo) * g(hi) > 0.0) {
    fail(ErrorCode::parameter_infeasible, "tune_pr_eta: target lambda_inf " + std::to_string(lambda_target) + " unreachable");
  }
  const double eta = bisect_root(g, lo, hi);
  return {eta, eval(eta)};
}

Tuning tune_purify_q(const TwoModeState& rho, double lambda_target) {
  auto eval = [&](double q) {
    const auto node = detail::d_node(q, rho.cutoff());
    return params_of(detail::purify_branches(rho, node, 1));
  };
  return best_q(eval, lambda_target, "tune_purify_q");
}

Tuning tune_swap_q(const TwoModeState& left, const TwoModeState& right, double lambda_target) {
  auto eval = [&](double q) {
    return params_of(detail::swap_branches(left, right, q, 1));
  };
  return best_q(eval, lambda_target, "tune_swap_q");
}

}  // namespace cvqr
