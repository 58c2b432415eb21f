#include "cvqr/errors.hpp"

namespace cvqr {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::improbable_branch: return "improbable-branch";
    case ErrorCode::displaced_state: return "displaced-state";
    case ErrorCode::epsilon_undefined: return "epsilon-undefined";
    case ErrorCode::divergent_fixed_point: return "divergent-fixed-point";
    case ErrorCode::structure_leak: return "structure-leak";
    case ErrorCode::parameter_infeasible: return "parameter-infeasible";
    case ErrorCode::gaussification_divergent: return "gaussification-divergent";
    case ErrorCode::no_feasible_plan: return "no-feasible-plan";
  }
  return "unknown";
}

}  // namespace cvqr
