#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cvqr {

enum class ErrorCode {
  domain,                  // argument outside its physical range
  improbable_branch,       // heralded branch with (numerically) zero probability
  displaced_state,         // non-negligible first moments
  epsilon_undefined,       // rho_{11,00} = 0, Gauss parameters have no meaning
  divergent_fixed_point,   // Gaussification fixed point does not exist
  structure_leak,          // low-photon block left the F1 pattern
  parameter_infeasible,    // no heralding parameter reaches the requested target
  gaussification_divergent,
  no_feasible_plan,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the chain simulator; carries the name of the failing stage.
class StageError : public Error {
 public:
  StageError(ErrorCode code, std::string stage, const std::string& what)
      : Error(code, what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace cvqr
