#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csc/rational.hpp"

namespace csc {

/// One hyperedge: exactly one player vertex plus a nonempty set of resource
/// vertices. Resources are stored as sorted distinct internal indices.
struct Configuration {
  int player = -1;
  std::vector<int> resources;

  int size() const { return static_cast<int>(resources.size()); }
  bool contains(int r) const;
};

/// Bipartite hypergraph over players and resources. Identity of a
/// configuration is its index in `configs`; duplicates are legal and common
/// (the regularization steps create them on purpose).
struct Hypergraph {
  std::vector<std::string> players;    // index -> external id
  std::vector<std::string> resources;  // index -> external id
  std::vector<Configuration> configs;

  int num_players() const { return static_cast<int>(players.size()); }
  int num_resources() const { return static_cast<int>(resources.size()); }
  int num_configs() const { return static_cast<int>(configs.size()); }

  std::optional<int> player_index(const std::string& id) const;
  std::optional<int> resource_index(const std::string& id) const;

  /// Configuration indices per player, in config order.
  std::vector<std::vector<int>> configs_by_player() const;
};

/// Raw (string-id) form as read from JSON, before index resolution.
struct RawConfig {
  std::string player;
  std::vector<std::string> resources;
};

/// Resolves ids to indices and checks the format. Throws MalformedInstance
/// on duplicate ids, overlap between the player and resource id spaces,
/// unknown ids, repeated resources within a configuration, or an empty
/// resource list.
Hypergraph make_hypergraph(std::vector<std::string> players,
                           std::vector<std::string> resources,
                           const std::vector<RawConfig>& raw);

struct DegreeProfile {
  std::vector<int> player_degree;    // by player index
  std::vector<int> resource_degree;  // by resource index
  bool is_regular = false;           // all players at ell, all resources <= ell
  int ell = 0;                       // witnessed degree bound (common player
                                     // degree when regular, max degree else)
};

/// Recomputes degrees and re-checks the structural invariants of an already
/// indexed hypergraph (useful after hand construction). Throws
/// MalformedInstance on violation.
DegreeProfile validate(const Hypergraph& h);

/// Size-class partition of the configurations for a degree bound ell >= 2:
/// sizes in [1, ell^4) are class 0, sizes in [ell^(k+3), ell^(k+4)) are
/// class k. `depth` is the smallest d such that no class >= d is inhabited.
struct SizeClassIndex {
  long long ell = 0;
  int depth = 0;
  std::vector<int> class_of;            // by config index
  std::vector<std::vector<int>> klass;  // class k -> config indices, k < depth
};

int size_class_of(long long size, long long ell);
SizeClassIndex size_classes(const Hypergraph& h, long long ell);

/// Player's entry in a relaxed matching: a configuration of that player and
/// the subset of its resources the player keeps.
struct MatchEntry {
  int config = -1;
  std::vector<int> kept;  // sorted resource indices
};

struct RelaxedMatching {
  std::vector<std::optional<MatchEntry>> entries;  // by player index

  explicit RelaxedMatching(std::size_t players = 0) : entries(players) {}
};

/// max over entries of |C| / |kept|; nullopt when a player is uncovered or
/// keeps nothing.
MaybeAlpha achieved_alpha(const Hypergraph& h, const RelaxedMatching& sol);

struct Violation {
  enum Kind {
    PlayerUncovered,
    WrongPlayer,    // entry's configuration belongs to someone else
    KeptEmpty,
    KeptNotSubset,  // kept resource outside the source configuration
    Overlap,        // resource kept by two players
  };
  Kind kind;
  std::string detail;
};

struct VerifyReport {
  std::vector<Violation> violations;
  MaybeAlpha alpha;      // achieved alpha, when defined
  Rat target{0};
  bool accepted = false; // no violations and alpha <= target
};

/// Checks a solution against an instance and a target alpha. Structure
/// errors (bad indices) throw MalformedSolution; semantic defects are
/// reported as violations.
VerifyReport verify(const Hypergraph& h, const RelaxedMatching& sol,
                    const Rat& alpha_target);

}  // namespace csc
