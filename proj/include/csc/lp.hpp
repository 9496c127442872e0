#pragma once

#include <vector>

#include "csc/core.hpp"

namespace csc {

/// Matching LP: one variable x_C >= 0 per configuration,
///   sum over configs of player i: x_C = 1  (every player fully covered)
///   sum over configs holding r:  x_C <= 1  (no resource oversubscribed)
/// Feasibility decided by an exact phase-1 simplex (Bland's rule), so the
/// returned point is a vertex of the polytope and all arithmetic is
/// rational.
struct LpResult {
  bool feasible = false;
  std::vector<Rat> x;              // per config; empty when infeasible
  std::vector<int> stuck_players;  // players whose cover requirement failed
};

LpResult solve_matching_lp(const Hypergraph& h);

}  // namespace csc
