#pragma once

// Internal: contractions for maps that act locally at the two nodes of a pair
// of two-mode states (two-copy protocols) and for joint projections across two
// states (swapping).

#include <vector>

#include "cvqr/fock/state.hpp"

namespace cvqr::detail {

/// One entry <out| K |x, y> of a node Kraus operator; x belongs to the first
/// copy, y to the second.
struct NodeTerm {
  int out;
  int x;
  int y;
  double coef;
};

using NodeKraus = std::vector<NodeTerm>;

/// Vacuum-heralded balanced beam splitter.
NodeKraus gaussify_node(int cutoff);

/// D(q) node map, exact for all x, y <= cutoff; outputs beyond the cutoff are
/// dropped.
NodeKraus d_node(double q, int cutoff);

/// Unnormalized (K_A (x) K_B)(rho1 (x) rho2)(K_A (x) K_B)^dagger with node A
/// acting on the first modes and node B on the second modes. Only output
/// photon numbers <= max_out are computed (the rest stay zero).
TwoModeState apply_node_maps(const TwoModeState& rho1, const TwoModeState& rho2, const NodeKraus& ka,
                             const NodeKraus& kb, int max_out);

/// Functional <f| on (m, n) with m from the left state's second mode and n
/// from the right state's first mode.
struct ProjectionTerm {
  int m;
  int n;
  double coef;
};

/// Nonzero entries of <xi(-q)| D(q) used by the non-Gaussian swap.
std::vector<ProjectionTerm> swap_functional(double q, int cutoff);

/// Unnormalized swap output on (left mode 0, right mode 1) for max photon
/// numbers <= max_out.
TwoModeState joint_projection(const TwoModeState& left, const TwoModeState& right,
                              const std::vector<ProjectionTerm>& f, int max_out);

/// ng_swap branch sum: both assignments of the xi(q) and xi(-q) projections
/// to the two interferometer outputs are accepted.
TwoModeState swap_branches(const TwoModeState& left, const TwoModeState& right, double q, int max_out);

/// purify_distill branch sum over the heralding port at each node.
TwoModeState purify_branches(const TwoModeState& rho, const NodeKraus& node, int max_out);

}  // namespace cvqr::detail
