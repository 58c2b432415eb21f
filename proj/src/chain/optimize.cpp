#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <atomic>
#include <boost/asio/post.hpp>
#include <boost/asio/thread_pool.hpp>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "cvqr/chain/chain.hpp"
#include "cvqr/errors.hpp"

namespace cvqr {
namespace {

constexpr double max_initial_lambda = 0.2;
constexpr double infeasible_cost = 1e3;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

struct Point {
  int nesting;
  double initial_lambda, lambda_pr, lambda_final;
};

struct Evaluation {
  std::optional<ChainResult> result;
  double cost = infeasible_cost;  // -log10 of the normalized rate
};

Evaluation evaluate(const Point& p, double length_km, Strategy strategy, const OptimizeOptions& opt) {
  Evaluation e;
  try {
    ChainResult r =
        simulate_chain(schedule_plan(length_km, strategy, p.nesting, p.initial_lambda, p.lambda_pr, p.lambda_final, opt));
    if (r.rate.normalized_by_resources > 0.0) e.cost = -std::log10(r.rate.normalized_by_resources);
    e.result = std::move(r);
  } catch (const Error&) {
  }
  return e;
}

std::vector<Point> coarse_grid(const OptimizeOptions& opt) {
  std::vector<Point> grid;
  for (int n = opt.min_nesting; n <= opt.max_nesting; ++n) {
    for (double l0 : {0.01, 0.02, 0.04, 0.08, 0.15}) {
      for (double lpr : {0.85, 0.95, 0.98}) {
        for (double lf : {0.5, 0.65, 0.8}) grid.push_back({n, l0, lpr, lf});
      }
    }
  }
  return grid;
}

struct SimplexContext {
  int nesting;
  double length_km;
  Strategy strategy;
  const OptimizeOptions* opt;
  int remaining;
  Evaluation best;
  int evaluations = 0;
  int feasible = 0;
};

double simplex_cost(const gsl_vector* x, void* raw) {
  auto* ctx = static_cast<SimplexContext*>(raw);
  if (ctx->remaining <= 0) return infeasible_cost;
  --ctx->remaining;
  ++ctx->evaluations;
  const Point p{ctx->nesting, max_initial_lambda * sigmoid(gsl_vector_get(x, 0)), sigmoid(gsl_vector_get(x, 1)),
                sigmoid(gsl_vector_get(x, 2))};
  Evaluation e = evaluate(p, ctx->length_km, ctx->strategy, *ctx->opt);
  if (e.result) ++ctx->feasible;
  const double cost = e.cost;
  if (e.result && cost < ctx->best.cost) ctx->best = std::move(e);
  return cost;
}

}  // namespace

unsigned default_thread_count() {
  if (const char* env = std::getenv("CVQR_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ChainPlan schedule_plan(double length_km, Strategy strategy, int nesting, double initial_lambda, double lambda_pr,
                        double lambda_final, const OptimizeOptions& opt) {
  ChainPlan plan;
  plan.total_length_km = length_km;
  plan.nesting = nesting;
  plan.initial_lambda = initial_lambda;
  plan.strategy = strategy;
  plan.cutoff = opt.cutoff;
  plan.mu = opt.mu;
  plan.gaussify_iterations = opt.gaussify_iterations;
  plan.pr.lambda_target = lambda_pr;
  for (int i = 0; i < nesting; ++i) {
    StageParam s;
    s.lambda_target = i + 1 == nesting ? lambda_final : lambda_pr;
    plan.swaps.push_back(s);
  }
  return plan;
}

OptimizeResult optimize(double length_km, Strategy strategy, const OptimizeOptions& opt) {
  if (opt.budget < 1) fail(ErrorCode::domain, "optimize: budget must be >= 1");
  if (opt.min_nesting < 1 || opt.max_nesting < opt.min_nesting) fail(ErrorCode::domain, "optimize: bad nesting range");
  std::mt19937_64 rng(opt.seed);

  std::vector<Point> grid = coarse_grid(opt);
  const auto grid_budget = static_cast<std::size_t>(std::max(1, opt.budget * 2 / 3));
  if (grid.size() > grid_budget) {
    std::shuffle(grid.begin(), grid.end(), rng);
    grid.resize(grid_budget);
  }

  std::vector<Evaluation> evals(grid.size());
  {
    boost::asio::thread_pool pool(std::min<std::size_t>(opt.threads ? opt.threads : default_thread_count(), grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      boost::asio::post(pool, [&, i] { evals[i] = evaluate(grid[i], length_km, strategy, opt); });
    }
    pool.join();
  }

  OptimizeResult out;
  out.evaluations = static_cast<int>(grid.size());
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < evals.size(); ++i) {
    if (!evals[i].result) continue;
    ++out.feasible;
    if (!best || evals[i].cost < evals[*best].cost) best = i;
  }
  if (!best) {
    fail(ErrorCode::no_feasible_plan, "optimize: no feasible plan among " + std::to_string(grid.size()) +
                                          " grid points at " + std::to_string(length_km) + " km");
  }

  SimplexContext ctx{grid[*best].nesting, length_km, strategy, &opt, opt.budget - out.evaluations,
                     std::move(evals[*best])};
  if (ctx.remaining >= 4) {
    const Point& start = grid[*best];
    std::uniform_real_distribution<double> jitter(0.8, 1.2);
    gsl_vector* x = gsl_vector_alloc(3);
    gsl_vector* step = gsl_vector_alloc(3);
    gsl_vector_set(x, 0, logit(start.initial_lambda / max_initial_lambda));
    gsl_vector_set(x, 1, logit(start.lambda_pr));
    gsl_vector_set(x, 2, logit(start.lambda_final));
    for (int i = 0; i < 3; ++i) gsl_vector_set(step, static_cast<std::size_t>(i), 0.5 * jitter(rng));
    gsl_multimin_function fn{&simplex_cost, 3, &ctx};
    gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3);
    gsl_multimin_fminimizer_set(s, &fn, x, step);
    while (ctx.remaining > 0) {
      if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-3) == GSL_SUCCESS) break;
    }
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(step);
    gsl_vector_free(x);
  }
  out.evaluations += ctx.evaluations;
  out.feasible += ctx.feasible;
  out.result = std::move(*ctx.best.result);
  out.plan = out.result.plan;
  return out;
}

}  // namespace cvqr
