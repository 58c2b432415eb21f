#pragma once

// Internal: application of operators that act on a few modes of a dense
// multi-mode density matrix. The operator maps the digits of the target modes
// (local input index) to a combination of local output indices; it may drop
// trailing targets (heralding) so that the output has fewer modes.

#include <span>
#include <vector>

#include "cvqr/fock/state.hpp"

namespace cvqr::detail {

struct LocalTerm {
  std::size_t out;  // local output index over the kept targets
  cplx coef;
};

/// terms[j] lists the images of local input basis ket j.
struct LocalOperator {
  int in_modes = 1;
  int out_modes = 1;
  std::vector<std::vector<LocalTerm>> terms;
};

/// K rho K^dagger, where K acts on `targets` (distinct modes). The first
/// `op.out_modes` targets keep their positions; the rest are removed.
FockState apply_local(const FockState& rho, std::span<const int> targets, const LocalOperator& op);

}  // namespace cvqr::detail
