#pragma once

#include <cstdint>
#include <vector>

#include "csc/bits.hpp"
#include "csc/core.hpp"
#include "csc/hierarchy.hpp"
#include "csc/rational.hpp"
#include "csc/select.hpp"

namespace csc {

/// Load cap for shared resources: floor(c_gamma * (d + ell)/ell * ln(ell)),
/// never below 1. `depth` is the number of size classes of the instance.
long long gamma_value(int depth, long long ell, const Rat& c_gamma,
                      int log_bits = 32);

/// Resource shares held by a family of configurations. holdings[c] is a
/// sorted subset of configuration c's resources, and empty for every
/// configuration outside the family. loads[r] counts the holders of r and
/// never exceeds gamma.
struct GoodAssignment {
  std::vector<std::vector<int>> holdings;  // by config index
  std::vector<long long> loads;            // by resource index
  long long gamma = 0;
};

/// Recomputes loads from holdings and checks every structural invariant
/// (subset of the configuration, sorted, loads consistent and <= gamma).
/// Throws Error on any violation.
void check_assignment(const Hypergraph& h, const GoodAssignment& g);

struct AssignOutcome {
  bool feasible = false;
  GoodAssignment out;         // set when feasible
  std::vector<int> witness;   // deficient subfamily otherwise (cut side)
};

/// Tries to give each family[i] exactly floor((1-eps) * alpha[i]) of its
/// resources inside `avail`, with every resource held at most gamma times.
/// One max-flow decides; on failure the witness lists the configurations
/// whose neighborhoods are jointly too small.
AssignOutcome good_assignment(const Hypergraph& h,
                              const std::vector<int>& family,
                              const Bits& avail,
                              const std::vector<long long>& alpha,
                              long long gamma, const Rat& eps);

struct LiftParams {
  Rat eps_min{1, 10};  // floor for the demand shrink factor and for ln(n)
  int log_bits = 32;
};

struct LiftResult {
  GoodAssignment out;
  Rat multiplier{0};   // achieved demand multiplier relative to |holdings|
  int attempts = 0;    // flow computations spent
  bool clamped = false;  // a shrink-factor clamp was hit
};

/// Moves `prev` (held inside some level) one level down to `avail`,
/// asking for ell / (1 + 1/(2 ln n)) times the held amounts first and
/// backing off geometrically to multiplier 1, which cannot fail for a
/// well-formed input. Throws LiftCollapsed if it does.
LiftResult lift_assignment(const Hypergraph& h, const std::vector<int>& family,
                           const GoodAssignment& prev, const Bits& avail,
                           long long ell, long long gamma,
                           const LiftParams& params = {});

struct MuRecord {
  int config = -1;
  Rat mu{0};          // expected deletions over the conflict resources
  long long s = 0;    // total low-level load over the same resources
  long long lost = 0; // deletions realized
};

struct LevelTrace {
  int j = 0;                  // induction step: holdings moved into R_{j-1}
  Rat lift_multiplier{0};     // 0 when nothing was lifted
  int lift_attempts = 0;
  long long phase2_excluded = 0;  // resources too popular within the new class
  long long conflicts = 0;        // resources over the cap after phase 2
  long long deletions = 0;
  bool mu_window_ok = true;   // mu within [s/gamma^2, 2s/gamma] for each record
  std::vector<MuRecord> mu;   // one per lifted configuration
};

struct ReconstructResult {
  GoodAssignment out;
  std::vector<LevelTrace> levels;
  bool lift_clamped = false;
};

/// Walks the hierarchy top down. Each step lifts the accumulated holdings
/// one level, hands the newly entering size class its surviving resources,
/// and deletes the overload on conflicting resources from the lifted side
/// at random. The result holds every chosen configuration's share of R_0.
ReconstructResult reconstruct(const Hypergraph& h, const SizeClassIndex& idx,
                              const Hierarchy& hier, const Selection& sel,
                              long long gamma, std::uint64_t seed,
                              const LiftParams& params = {});

struct FinalizeResult {
  RelaxedMatching matching;
  Rat scale{0};              // kept fraction realized by the flow
  bool nominal_demand = false; // floor(|C| / (c_final * gamma)) was feasible as-is
  Rat alpha{0};              // achieved relaxation of the returned matching
};

/// Thins the holdings into pairwise disjoint kept sets, one per player.
/// Demands floor(s * |C|) (at least 1) are packed by a flow; binary search
/// finds the largest feasible uniform scale s. Leftover held resources are
/// then dealt greedily to their worst-off holder. Throws FinalizeInfeasible
/// when even one resource per configuration cannot be packed.
FinalizeResult finalize_matching(const Hypergraph& h, const Selection& sel,
                                 const GoodAssignment& asg, long long gamma,
                                 long long c_final);

}  // namespace csc
