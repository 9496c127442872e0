#pragma once

#include <cstdint>

#include "csc/bits.hpp"
#include "csc/core.hpp"
#include "csc/hierarchy.hpp"
#include "csc/rational.hpp"

namespace csc {

/// Tuning knobs for the configuration selection step. The deviation
/// constants multiply |C cap R_h| ln(ell); dev_near applies when the
/// watched level h is within 5 of the configuration's class, dev_far
/// (additionally scaled by 1/ell) when h is at least 6 below it.
struct SelectParams {
  Rat dev_near{63};
  Rat dev_far{135};
  int log_bits = 32;          // dyadic precision of ln(ell) in thresholds
  long long max_rounds = 0;   // resample budget; 0 means 10 * players
};

/// One concentration event: configuration `config` (of class k) watched at
/// level h. The event fires when the selected configurations of class h
/// cover C cap R_h by `threshold` or more. Events with cap == 0 are
/// vacuous: the observed value is always 0 and they never fire.
struct BadEvent {
  int config = -1;
  int k = 0;
  int h = 0;
  long long cap = 0;          // |C cap R_h|
  Rat expectation{0};         // mean coverage under independent uniform picks
  Rat threshold{0};           // expectation + deviation term
  std::vector<int> players;   // players owning a class-h config that meets C cap R_h
};

struct EventTable {
  std::vector<BadEvent> events;  // grouped by config, h ascending within
  std::vector<int> first_event;  // config -> index of its h = 0 entry
  std::vector<Bits> masks;       // per config, reused by evaluation
};

EventTable build_events(const Hypergraph& h, const SizeClassIndex& idx,
                        const Hierarchy& hier, const SelectParams& params);

/// Certified probability weight of the event in the dependency analysis,
/// exp(-cap / ell^9 - 18 ln(ell)). Diagnostic only; the solver never
/// branches on it.
double lll_weight(const BadEvent& e, long long ell);

/// One configuration index per player.
struct Selection {
  std::vector<int> choice;
};

/// Observed coverage per event under `sel`, in table order.
std::vector<long long> evaluate_events(const Hypergraph& h, const SizeClassIndex& idx,
                                       const Hierarchy& hier, const EventTable& table,
                                       const Selection& sel);

struct SelectReport {
  Selection sel;
  bool converged = false;
  long long rounds = 0;   // resamples performed
  Rat score{0};           // sum of observed/threshold over firing events
  long long events = 0;
  long long vacuous = 0;
};

/// Draws one configuration per player uniformly, then repeatedly resamples
/// the players of the first firing event in table order until no event
/// fires or the budget runs out. On exhaustion the best selection seen
/// (smallest score) is returned with converged = false.
SelectReport select_configs(const Hypergraph& h, const SizeClassIndex& idx,
                            const Hierarchy& hier, const SelectParams& params,
                            std::uint64_t seed);

struct BoundFailure {
  int config = -1;
  int j = 0;
  Rat lhs{0}, rhs{0};
};

struct SelectionBoundReport {
  bool ok = false;
  long long checks = 0;
  Rat max_ratio{0};  // max lhs/rhs over checks with rhs > 0
  std::vector<BoundFailure> failures;
};

/// Level-weighted coverage bound for every configuration C of class k and
/// every j <= k:
///   sum_{j<=h<=k} ell^h X_C^(h)
///     <= (1/ell) sum_{j<=h<=k} ell^h T_C(h) + coeff (d+ell)/ell ln(ell) |C|
/// where X counts selected class-h configurations on C cap R_h and T counts
/// all of them.
SelectionBoundReport check_selection_bound(const Hypergraph& h, const SizeClassIndex& idx,
                                           const Hierarchy& hier, const Selection& sel,
                                           const Rat& coeff, int log_bits = 32);

/// Same left-hand side, restricted to the selected configurations, against
/// the pure bound coeff (d+ell)/ell ln(ell) |C|.
SelectionBoundReport check_chosen_bound(const Hypergraph& h, const SizeClassIndex& idx,
                                        const Hierarchy& hier, const Selection& sel,
                                        const Rat& coeff, int log_bits = 32);

}  // namespace csc
