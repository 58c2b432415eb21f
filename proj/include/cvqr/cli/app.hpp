#pragma once

#include <ostream>

namespace cvqr::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_infeasible = 3;

/// Entry point of the command-line tool. Results go to `out` (or the
/// requested output file), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cvqr::cli
