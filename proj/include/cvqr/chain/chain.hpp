#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "cvqr/gauss/covariance.hpp"
#include "cvqr/gauss/params.hpp"
#include "cvqr/keyrate/rate.hpp"

namespace cvqr {

enum class Strategy { pr_only, with_purification };

std::string_view to_string(Strategy s) noexcept;
/// Accepts "pr-only" and "with-purification". Throws ErrorCode::domain otherwise.
Strategy parse_strategy(std::string_view name);

/// Heralding parameter of one stage: either given directly or solved for a
/// lambda_inf target. An empty stage (both NaN) is skipped where allowed.
struct StageParam {
  double lambda_target = std::numeric_limits<double>::quiet_NaN();
  double value = std::numeric_limits<double>::quiet_NaN();

  bool empty() const noexcept;
};

struct ChainPlan {
  double total_length_km = 0.0;
  int nesting = 0;  // 2^nesting segments
  double initial_lambda = 0.0;
  Strategy strategy = Strategy::pr_only;
  int cutoff = 8;
  double mu = 0.2;
  StageParam pr;  // eta of the initial photon-replacement distillation
  std::vector<StageParam> swaps;  // q of each swap level, size nesting
  /// q of the purification after the first swap (with-purification only); an
  /// empty stage keeps lambda_inf of the swap output.
  StageParam purify;
  int gaussify_iterations = 2;

  double segment_length_km() const;
  /// Per-mode transmittance of the mid-segment source.
  double initial_tau() const;
  /// Throws ErrorCode::domain describing the first violated constraint.
  void validate() const;
};

struct StageRecord {
  std::string name;
  double parameter = std::numeric_limits<double>::quiet_NaN();  // eta or q
  double p_succ = 1.0;
  GaussParams params;
  double leakage = 0.0;
  double pairs_consumed = 1.0;  // expected initial pairs per output state so far
};

struct ChainResult {
  ChainPlan plan;
  std::vector<StageRecord> stages;
  GaussParams final_params;
  CovarianceMatrix final_cm;
  double p_total = 1.0;
  double n_qr = 1.0;  // 1 / p_total
  double pairs_consumed = 1.0;  // expected-cost recursion over the tree
  double photons_consumed = 0.0;  // expected single-photon ancillas, same recursion
  RateReport rate;
};

/// Runs the plan. Failures are StageError carrying the stage name:
/// gaussification_divergent for an output without a valid fixed point,
/// parameter_infeasible when no heralding parameter reaches a target.
ChainResult simulate_chain(const ChainPlan& plan);

/// p0 * p_gauss * (p_swap * p_dist)^n. Throws ErrorCode::domain for
/// probabilities outside (0, 1] or n < 0.
double p_total_closed_form(double p0, double p_gauss, double p_swap, double p_dist, int n);
/// p0 * p_gauss * (L / l)^log2(p_swap * p_dist).
double p_total_distance_form(double p0, double p_gauss, double p_swap, double p_dist, double total_length,
                             double segment_length);

struct OptimizeOptions {
  std::uint64_t seed = 1;
  int budget = 200;  // simulate_chain evaluations
  int cutoff = 8;
  double mu = 0.2;
  int gaussify_iterations = 2;
  int min_nesting = 1;
  int max_nesting = 6;
  unsigned threads = 0;  // 0: CVQR_THREADS or hardware concurrency
};

struct OptimizeResult {
  ChainPlan plan;
  ChainResult result;
  int evaluations = 0;
  int feasible = 0;
};

/// Coarse grid followed by Nelder-Mead refinement of the continuous targets,
/// maximizing the normalized rate. Deterministic for a given seed and budget.
/// Throws ErrorCode::no_feasible_plan when no evaluated plan gives a result.
OptimizeResult optimize(double length_km, Strategy strategy, const OptimizeOptions& opt = {});

/// Plan of the optimizer's family: every swap but the last holds lambda_pr,
/// the last one lands on lambda_final.
ChainPlan schedule_plan(double length_km, Strategy strategy, int nesting, double initial_lambda, double lambda_pr,
                        double lambda_final, const OptimizeOptions& opt);

/// Worker count: CVQR_THREADS if set to a positive integer, else hardware
/// concurrency (at least 1).
unsigned default_thread_count();

}  // namespace cvqr
