#pragma once

#include <vector>

#include "csc/core.hpp"

namespace csc {

// Exact reference answers for desk-scale instances. The solver pipeline is
// validated against these, never the other way around.

struct OracleLimits {
  long long max_selections = 1000000;
};

/// Minimum achievable alpha when `chosen` (one configuration index per
/// player) is fixed and only the kept sets are free. Feasibility of a
/// candidate alpha is a bipartite flow with per-config demand
/// ceil(|C| / alpha); the optimum is the smallest feasible value of the
/// form |C| / t. nullopt when not even one resource per player fits.
MaybeAlpha min_alpha_for_selection(const Hypergraph& h, const std::vector<int>& chosen);

struct SelectionAlpha {
  MaybeAlpha alpha;
  RelaxedMatching witness;  // meaningful when alpha is finite
};

SelectionAlpha min_alpha_for_selection_witnessed(const Hypergraph& h,
                                                 const std::vector<int>& chosen);

/// Quick reject helper: true iff the fixed selection admits a relaxed
/// matching with achieved alpha strictly below `bound`.
bool selection_beats(const Hypergraph& h, const std::vector<int>& chosen, const Rat& bound);

struct OracleResult {
  MaybeAlpha alpha;                 // global optimum alpha*
  std::vector<int> best_selection;  // per player, when finite
  RelaxedMatching witness;
  long long selections_tried = 0;
};

/// Global optimum over all selections, by enumeration. Throws TooLarge when
/// the selection space exceeds limits.max_selections.
OracleResult brute_force_min_alpha(const Hypergraph& h, const OracleLimits& limits = {});

}  // namespace csc
