#include "cvqr/chain/chain.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "cvqr/errors.hpp"
#include "cvqr/fock/operations.hpp"
#include "cvqr/protocol/ops.hpp"

namespace cvqr {
namespace {

GaussParams params_or_invalid(const TwoModeState& s) {
  const F1Matrix f = extract_f1(s);
  if (!(f.rho00_00 > 0.0) || f.rho11_00 == 0.0) {
    GaussParams g;
    g.validity = Validity::epsilon_undefined;
    return g;
  }
  return gauss_params(f);
}

// Runs fn, rethrowing library errors as StageError naming the stage.
template <class Fn>
auto in_stage(const std::string& stage, Fn&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(e.code(), stage, stage + ": " + e.what());
  }
}

void require_convergent(const HeraldedOutcome& out, const std::string& stage) {
  if (out.divergent) {
    throw StageError(ErrorCode::gaussification_divergent, stage,
                     stage + ": output has no physical Gaussification fixed point");
  }
}

}  // namespace

std::string_view to_string(Strategy s) noexcept {
  return s == Strategy::pr_only ? "pr-only" : "with-purification";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "pr-only") return Strategy::pr_only;
  if (name == "with-purification") return Strategy::with_purification;
  fail(ErrorCode::domain, "unknown strategy '" + std::string(name) + "'");
}

bool StageParam::empty() const noexcept { return std::isnan(lambda_target) && std::isnan(value); }

double ChainPlan::segment_length_km() const { return total_length_km / std::ldexp(1.0, nesting); }

double ChainPlan::initial_tau() const { return fiber_tau(0.5 * segment_length_km(), mu); }

void ChainPlan::validate() const {
  auto bad = [](const std::string& what) { fail(ErrorCode::domain, "invalid plan: " + what); };
  if (!(total_length_km >= 0.0) || !std::isfinite(total_length_km)) bad("total_length_km must be finite and >= 0");
  if (nesting < 0 || nesting > 10) bad("nesting must lie in 0..10");
  if (!(initial_lambda >= 0.0 && initial_lambda < 1.0)) bad("initial_lambda must lie in [0, 1)");
  if (cutoff < 2 || cutoff > 16) bad("cutoff must lie in 2..16");
  if (!(mu > 0.0)) bad("mu must be > 0");
  if (gaussify_iterations < 0 || gaussify_iterations > 6) bad("gaussify_iterations must lie in 0..6");
  if (swaps.size() != static_cast<std::size_t>(nesting)) bad("need one swap stage per nesting level");
  if (strategy == Strategy::with_purification && nesting < 1) bad("with-purification needs nesting >= 1");
  auto check = [&](const StageParam& p, const std::string& name, bool may_be_empty) {
    if (p.empty() && !may_be_empty) bad(name + " needs a value or a lambda target");
    if (!std::isnan(p.lambda_target) && !(p.lambda_target > 0.0 && p.lambda_target < 1.0)) {
      bad(name + " lambda target must lie in (0, 1)");
    }
    if (!std::isnan(p.value) && !(p.value > 0.0 && std::isfinite(p.value))) bad(name + " value must be > 0");
  };
  check(pr, "pr", true);
  if (!std::isnan(pr.value) && pr.value > 1.0) bad("pr eta must lie in (0, 1]");
  for (std::size_t i = 0; i < swaps.size(); ++i) check(swaps[i], "swap" + std::to_string(i + 1), false);
  check(purify, "purify", true);
}

ChainResult simulate_chain(const ChainPlan& plan) {
  plan.validate();
  ChainResult res;
  res.plan = plan;
  double pairs = 1.0, photons = 0.0;

  TwoModeState cur = in_stage("source", [&] {
    TwoModeState s = make_lossy_epr(plan.initial_lambda, plan.initial_tau(), plan.cutoff);
    s.normalize();
    return s;
  });
  res.stages.push_back({"source", std::nan(""), 1.0, params_or_invalid(cur), extract_f1(cur).off_pattern, pairs});

  auto record = [&](const std::string& name, double parameter, HeraldedOutcome out, int copies) {
    require_convergent(out, name);
    pairs = copies * pairs / out.p_succ;
    photons = (copies * photons + out.ancillas) / out.p_succ;
    res.p_total *= out.p_succ;
    res.stages.push_back({name, parameter, out.p_succ, params_or_invalid(out.state), out.leakage, pairs});
    cur = std::move(out.state);
  };

  if (!plan.pr.empty()) {
    in_stage("pr", [&] {
      const double eta = std::isnan(plan.pr.value) ? tune_pr_eta(cur, plan.pr.lambda_target).value : plan.pr.value;
      record("pr", eta, pr_distill(cur, eta), 1);
      return 0;
    });
  }

  for (int level = 0; level < plan.nesting; ++level) {
    const std::string name = "swap" + std::to_string(level + 1);
    in_stage(name, [&] {
      const StageParam& sp = plan.swaps[static_cast<std::size_t>(level)];
      const double q = std::isnan(sp.value) ? tune_swap_q(cur, cur, sp.lambda_target).value : sp.value;
      record(name, q, ng_swap(cur, cur, q), 2);
      return 0;
    });
    if (level == 0 && plan.strategy == Strategy::with_purification) {
      in_stage("purify", [&] {
        double q = plan.purify.value;
        if (std::isnan(q)) {
          const double target =
              std::isnan(plan.purify.lambda_target) ? res.stages.back().params.lambda_inf : plan.purify.lambda_target;
          q = tune_purify_q(cur, target).value;
        }
        record("purify", q, purify_distill(cur, q), 2);
        return 0;
      });
    }
  }

  in_stage("gaussify", [&] {
    double tree = 1.0;
    for (int i = 0; i < plan.gaussify_iterations; ++i) {
      HeraldedOutcome step = gaussify_step(cur);
      require_convergent(step, "gaussify");
      tree = tree * tree * step.p_succ;
      pairs = 2.0 * pairs / step.p_succ;
      photons = 2.0 * photons / step.p_succ;
      cur = std::move(step.state);
    }
    if (plan.gaussify_iterations > 0) {
      const double yield = tree / std::ldexp(1.0, plan.gaussify_iterations);
      res.p_total *= yield;
      res.stages.push_back({"gaussify", std::nan(""), tree, params_or_invalid(cur), extract_f1(cur).off_pattern, pairs});
    }
    return 0;
  });

  in_stage("rate", [&] {
    res.final_params = params_or_invalid(cur);
    res.final_cm = second_moments(cur);
    res.n_qr = 1.0 / res.p_total;
    res.pairs_consumed = pairs;
    res.photons_consumed = photons;
    res.rate = repeater_rate(key_rate_from_cm(res.final_cm), res.n_qr);
    return 0;
  });
  return res;
}

double p_total_closed_form(double p0, double p_gauss, double p_swap, double p_dist, int n) {
  for (double p : {p0, p_gauss, p_swap, p_dist}) {
    if (!(p > 0.0 && p <= 1.0)) fail(ErrorCode::domain, "p_total_closed_form: probabilities must lie in (0, 1]");
  }
  if (n < 0) fail(ErrorCode::domain, "p_total_closed_form: n must be >= 0");
  return p0 * p_gauss * std::pow(p_swap * p_dist, n);
}

double p_total_distance_form(double p0, double p_gauss, double p_swap, double p_dist, double total_length,
                             double segment_length) {
  for (double p : {p0, p_gauss, p_swap, p_dist}) {
    if (!(p > 0.0 && p <= 1.0)) fail(ErrorCode::domain, "p_total_distance_form: probabilities must lie in (0, 1]");
  }
  if (!(segment_length > 0.0) || !(total_length >= segment_length)) {
    fail(ErrorCode::domain, "p_total_distance_form: need total_length >= segment_length > 0");
  }
  return p0 * p_gauss * std::pow(total_length / segment_length, std::log2(p_swap * p_dist));
}

}  // namespace cvqr
