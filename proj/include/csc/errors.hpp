#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace csc {

// Structural problems (inputs that violate a format or a precondition) throw.
// Expected negative outcomes (infeasible LP, degraded certification, overflow
// during degree normalization) are represented as result values instead; see
// the individual module headers.

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Instance violates the hypergraph format (unknown ids, duplicate ids,
/// a configuration with a second player vertex or no resources at all).
struct MalformedInstance : Error {
  using Error::Error;
};

/// Solution references unknown players, out-of-range configuration indices
/// or unknown resource ids.
struct MalformedSolution : Error {
  using Error::Error;
};

/// Random generation exhausted its retry budget.
struct GenerationFailed : Error {
  using Error::Error;
};

/// Duplication factor from the matching LP exceeds the configured cap.
struct BlowupExceeded : Error {
  using Error::Error;
};

/// Enumeration space exceeds the configured oracle limit.
struct TooLarge : Error {
  using Error::Error;
};

/// A reduction's optimum guess is inconsistent with the instance
/// (some player retains no positive value under the guess).
struct BadGuess : Error {
  using Error::Error;
};

/// The demand ladder of a lift step bottomed out at multiplier 1 and the
/// assignment was still infeasible. Indicates a corrupted input assignment
/// (held resources missing from the target level, or a shrunk load cap).
struct LiftCollapsed : Error {
  using Error::Error;
};

/// Even one kept resource per chosen configuration cannot be packed
/// disjointly from the holdings. `deficient` lists the configuration
/// indices on the source side of the certifying cut.
struct FinalizeInfeasible : Error {
  FinalizeInfeasible(const std::string& what, std::vector<int> configs)
      : Error(what), deficient(std::move(configs)) {}
  std::vector<int> deficient;
};

/// A pull-back was asked to translate a solution that does not fit the trace.
struct PullbackFailed : Error {
  using Error::Error;
};

/// The cover LP certified that not even a fractional perfect matching
/// exists, so no relaxation can cover every player.
struct NoPerfectMatching : Error {
  using Error::Error;
};

}  // namespace csc
