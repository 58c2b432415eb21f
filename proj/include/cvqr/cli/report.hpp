#pragma once

#include <string>

#include "cvqr/chain/chain.hpp"

namespace cvqr::cli {

/// Round-trip scientific notation; "nan"/"inf" spelled out.
std::string format_number(double x);

/// JSON document with the plan, stage trace, final state and rate report.
std::string chain_report_json(const ChainResult& result);

/// Same plus the optimizer's evaluation counts and seed.
std::string optimize_report_json(const OptimizeResult& result, std::uint64_t seed);

inline constexpr const char* sweep_header = "distance_km,rate_direct,rate_qr,p_total,n_qr,nesting";

}  // namespace cvqr::cli
