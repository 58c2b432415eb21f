#include "cvqr/cli/app.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "cvqr/chain/chain.hpp"
#include "cvqr/cli/config.hpp"
#include "cvqr/cli/report.hpp"
#include "cvqr/errors.hpp"
#include "cvqr/keyrate/rate.hpp"
#include "cvqr/simd/kernels.hpp"

namespace cvqr::cli {
namespace {

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(ErrorCode::domain, "cannot open output '" + path + "'");
  file << text;
}

struct SearchFlags {
  std::string strategy = "pr-only";
  int budget = 150;
  std::uint64_t seed = 1;
  int cutoff = 8;
  double mu = 0.2;
  int gaussify_iterations = 2;
  int min_nesting = 1;
  int max_nesting = 6;

  void attach(CLI::App* cmd) {
    cmd->add_option("--strategy", strategy, "pr-only or with-purification")
        ->check(CLI::IsMember({"pr-only", "with-purification"}));
    cmd->add_option("--budget", budget, "simulate_chain evaluations per distance")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "optimizer seed");
    cmd->add_option("--cutoff", cutoff, "Fock cutoff per mode")->check(CLI::Range(2, 12));
    cmd->add_option("--mu", mu, "fiber loss in dB/km")->check(CLI::PositiveNumber);
    cmd->add_option("--gaussify-iterations", gaussify_iterations)->check(CLI::Range(0, 6));
    cmd->add_option("--min-nesting", min_nesting)->check(CLI::Range(1, 10));
    cmd->add_option("--max-nesting", max_nesting)->check(CLI::Range(1, 10));
  }

  OptimizeOptions options() const {
    OptimizeOptions o;
    o.seed = seed;
    o.budget = budget;
    o.cutoff = cutoff;
    o.mu = mu;
    o.gaussify_iterations = gaussify_iterations;
    o.min_nesting = min_nesting;
    o.max_nesting = max_nesting;
    return o;
  }
};

std::string direct_rate_table(const std::vector<double>& distances, double mu, const std::vector<double>& grid) {
  std::string text = "distance_km,lambda,rate,status\n";
  for (double d : distances) {
    const DirectRate r = direct_transmission_rate(d, mu, grid);
    text += fmt::format("{},{},{},{}\n", format_number(d), format_number(r.lambda), format_number(r.rate),
                        r.rate > 0.0 ? "secure" : "insecure");
  }
  return text;
}

std::string sweep_table(double min_km, double max_km, int points, const SearchFlags& flags) {
  const Strategy strategy = parse_strategy(flags.strategy);
  const OptimizeOptions opt = flags.options();
  std::string text = std::string(sweep_header) + "\n";
  for (int i = 0; i < points; ++i) {
    const double d = min_km + (max_km - min_km) * i / (points - 1);
    const double direct = direct_transmission_rate(d, flags.mu).rate;
    double rate_qr = 0.0, p_total = std::nan(""), n_qr = std::nan("");
    int nesting = 0;
    try {
      const OptimizeResult best = optimize(d, strategy, opt);
      rate_qr = best.result.rate.normalized_by_resources;
      p_total = best.result.p_total;
      n_qr = best.result.n_qr;
      nesting = best.plan.nesting;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::no_feasible_plan) throw;
    }
    text += fmt::format("{},{},{},{},{},{}\n", format_number(d), format_number(direct), format_number(rate_qr),
                        format_number(p_total), format_number(n_qr), nesting);
  }
  return text;
}

int report_error(const Error& e, std::ostream& err) {
  if (const auto* s = dynamic_cast<const StageError*>(&e)) {
    err << "infeasible plan at stage " << s->stage() << " (" << to_string(s->code()) << "): " << s->what() << "\n";
    return exit_infeasible;
  }
  err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
  return e.code() == ErrorCode::domain ? exit_usage : exit_infeasible;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuous-variable quantum repeater simulator"};
  app.require_subcommand(1);
  std::string simd;
  app.add_option("--simd", simd, "force a kernel backend")->check(CLI::IsMember({"scalar", "avx2", "neon"}));

  auto* direct = app.add_subcommand("direct-rate", "direct-transmission key rate");
  std::vector<double> distances;
  double direct_mu = 0.2;
  std::vector<double> lambda_grid;
  std::string direct_out;
  direct->add_option("--distance-km", distances, "distances in km")
      ->required()
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);
  direct->add_option("--mu", direct_mu, "fiber loss in dB/km")->check(CLI::PositiveNumber);
  direct->add_option("--lambda-grid", lambda_grid, "comma-separated squeezing grid")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 0.999999));
  direct->add_option("--output", direct_out, "output file (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "run one chain plan");
  std::string config_path, simulate_out;
  simulate->add_option("--config", config_path, "run configuration")->required();
  simulate->add_option("--output", simulate_out, "output file (overrides the config)");

  auto* sweep = app.add_subcommand("sweep", "optimized repeater vs direct rate over distance");
  double min_km = 0.0, max_km = 0.0;
  int points = 0;
  std::string sweep_out;
  SearchFlags sweep_flags;
  sweep->add_option("--min-km", min_km)->required()->check(CLI::NonNegativeNumber);
  sweep->add_option("--max-km", max_km)->required()->check(CLI::NonNegativeNumber);
  sweep->add_option("--points", points)->required()->check(CLI::Range(2, 100000));
  sweep->add_option("--output", sweep_out, "output file (default stdout)");
  sweep_flags.attach(sweep);

  auto* opt_cmd = app.add_subcommand("optimize", "search the best plan at one distance");
  double opt_km = 0.0;
  std::string opt_out;
  SearchFlags opt_flags;
  opt_cmd->add_option("--distance-km", opt_km)->required()->check(CLI::NonNegativeNumber);
  opt_cmd->add_option("--output", opt_out, "output file (default stdout)");
  opt_flags.attach(opt_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (!simd.empty()) {
      const simd::KernelTable* table = simd::find_kernels(simd);
      if (table == nullptr) fail(ErrorCode::domain, "backend '" + simd + "' is not supported on this machine");
      simd::set_active_kernels(*table);
    }
    if (*direct) {
      emit(direct_rate_table(distances, direct_mu, lambda_grid), direct_out, out);
    } else if (*simulate) {
      const RunConfig cfg = load_config(config_path);
      const std::string path = !simulate_out.empty() ? simulate_out : cfg.output.value_or("");
      emit(chain_report_json(simulate_chain(cfg.plan)), path, out);
    } else if (*sweep) {
      if (!(min_km < max_km)) fail(ErrorCode::domain, "sweep: --min-km must be below --max-km");
      if (sweep_flags.min_nesting > sweep_flags.max_nesting) fail(ErrorCode::domain, "sweep: empty nesting range");
      emit(sweep_table(min_km, max_km, points, sweep_flags), sweep_out, out);
    } else if (*opt_cmd) {
      if (opt_flags.min_nesting > opt_flags.max_nesting) fail(ErrorCode::domain, "optimize: empty nesting range");
      const OptimizeResult best = optimize(opt_km, parse_strategy(opt_flags.strategy), opt_flags.options());
      emit(optimize_report_json(best, opt_flags.seed), opt_out, out);
    }
  } catch (const Error& e) {
    return report_error(e, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_ok;
}

}  // namespace cvqr::cli
