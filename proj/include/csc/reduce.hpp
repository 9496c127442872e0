#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "csc/core.hpp"
#include "csc/pipeline.hpp"
#include "csc/rational.hpp"

namespace csc {

/// Max-min allocation instance: each player values each resource at a
/// nonnegative rational; absent pairs mean zero. Ids follow the hypergraph
/// conventions (distinct within and across the two sides).
struct SantaInstance {
  std::vector<std::string> players;
  std::vector<std::string> resources;
  std::map<std::pair<int, int>, Rat> value;  // (player, resource) -> v > 0

  int num_players() const { return static_cast<int>(players.size()); }
  int num_resources() const { return static_cast<int>(resources.size()); }
  Rat value_of(int player, int resource) const;
};

/// Throws MalformedInstance on duplicate or overlapping ids, out-of-range
/// pairs or negative values.
void validate_santa(const SantaInstance& s);

/// owner[r] = player holding resource r, or -1. Each resource has at most
/// one holder; players may hold nothing.
struct SantaAllocation {
  std::vector<int> owner;
};

Rat santa_player_value(const SantaInstance& s, const SantaAllocation& a, int player);
/// min over players; the objective of the allocation problem.
Rat santa_min_value(const SantaInstance& s, const SantaAllocation& a);

/// Matching instance -> allocation instance. One allocation player per
/// (player, configuration) incidence; one allocation resource per original
/// resource valued 1/|C| inside C, plus degree-1 aux resources of value 1
/// shared by all incidences of one player.
struct CscSantaTrace {
  int orig_players = 0;
  int orig_resources = 0;
  int orig_configs = 0;
  std::vector<std::pair<int, int>> santa_player_of;  // -> (player, config)
  std::vector<int> santa_resource_of;                // -> resource, -1 for aux
  std::vector<int> aux_owner;                        // aux -> player, -1 else
};

std::pair<SantaInstance, CscSantaTrace> csc_to_santa(const Hypergraph& h);

/// The forward solution map: a complete relaxed matching becomes an
/// allocation where the matched incidence holds its kept resources and
/// every other incidence of the player holds one aux resource.
SantaAllocation santa_allocation_from_matching(const Hypergraph& h,
                                               const CscSantaTrace& trace,
                                               const RelaxedMatching& sol);

/// The reverse map: some incidence of every player holds no aux resource;
/// its holdings become that player's kept set. Throws PullbackFailed when
/// no aux-free incidence with holdings exists for some player.
RelaxedMatching santa_pullback(const CscSantaTrace& trace, const SantaAllocation& a);

/// Object-routing table of one construction stage: players map to the
/// previous stage's player that receives their routed resources, resources
/// map to their previous-stage identity (-1 for stage-local ones).
struct StageMap {
  std::vector<int> player_to_prev;
  std::vector<int> res_to_prev;
};

/// Allocation instance -> matching instance, in four stages: power-of-two
/// rounding under the optimum guess, per-player value buckets along the
/// iterated-log chain, bundling down to three value sizes, and the final
/// lossless hypergraph encoding. Every stage keeps a routing table and a
/// loss factor (1 when the stage was vacuous for this instance).
struct SantaCscTrace {
  SantaInstance original;
  Rat opt_guess{0};
  long long two_n = 0;
  std::vector<long long> chain;  // ceil-log2 chain: two_n, ..., 1
  int log_star = 0;              // first chain index at 1
  SantaInstance stage1, stage2, stage3;
  Hypergraph stage4;
  StageMap map2, map3, map4;
  std::vector<Rat> loss_factors;  // per stage, 4 entries
};

struct ReduceParams {
  long long max_vertices = 50000;  // per-stage cap on players + resources
  long long bundle_copies = 0;     // aux players per distinct value; 0 = 2n
};

/// Throws BadGuess when rounding under opt_guess leaves a player with no
/// positive value, TooLarge when a stage would exceed max_vertices.
std::pair<Hypergraph, SantaCscTrace> santa_to_csc(const SantaInstance& s,
                                                  const Rat& opt_guess,
                                                  const ReduceParams& params = {});

/// Pull-back of a relaxed matching on the stage-4 hypergraph, unwound stage
/// by stage. stage_min holds the min player value after each unwind
/// (stage 3, stage 2, original); min_value repeats the original one.
struct PullbackReport {
  SantaAllocation alloc;  // on the original allocation instance
  Rat min_value{0};
  std::vector<Rat> stage_min;
  std::vector<Rat> stage_factors;
  Rat composed_loss{0};
};

PullbackReport csc_pullback(const SantaCscTrace& trace, const RelaxedMatching& sol);

/// Cover LP, duplication, and the full solve in one call, with the
/// matching mapped back to the input instance. Throws NoPerfectMatching on
/// a certified infeasible cover, Error when every restart failed. The
/// guarantee assumes configurations comfortably larger than the returned
/// relaxation; that premise is the caller's to meet, not checked here.
RelaxedMatching approx_solve(const Hypergraph& h, std::uint64_t seed,
                             const PipelineParams& params = {});

}  // namespace csc
