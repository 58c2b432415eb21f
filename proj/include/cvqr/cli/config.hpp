#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>

#include "cvqr/chain/chain.hpp"

namespace cvqr::cli {

inline constexpr int schema_version = 1;

/// Parsed run configuration.
///
/// Format: one `key = value` per line, `#` starts a comment. Keys:
///   schema_version (required, = 1), total_length_km, nesting, initial_lambda,
///   strategy (pr-only | with-purification), cutoff, mu, gaussify_iterations,
///   pr_eta | pr_lambda, swap_q | swap_lambda (comma list, one per level),
///   purify_q | purify_lambda, output, seed.
struct RunConfig {
  ChainPlan plan;
  std::optional<std::string> output;
  std::uint64_t seed = 1;
};

/// Throws cvqr::Error(ErrorCode::domain) naming the line for syntax errors,
/// unknown or duplicate keys, bad values and invalid plans.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

}  // namespace cvqr::cli
