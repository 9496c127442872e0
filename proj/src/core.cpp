#include "csc/core.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "csc/errors.hpp"

namespace csc {

bool Configuration::contains(int r) const {
  return std::binary_search(resources.begin(), resources.end(), r);
}

std::optional<int> Hypergraph::player_index(const std::string& id) const {
  for (int i = 0; i < num_players(); ++i)
    if (players[i] == id) return i;
  return std::nullopt;
}

std::optional<int> Hypergraph::resource_index(const std::string& id) const {
  for (int i = 0; i < num_resources(); ++i)
    if (resources[i] == id) return i;
  return std::nullopt;
}

std::vector<std::vector<int>> Hypergraph::configs_by_player() const {
  std::vector<std::vector<int>> by(players.size());
  for (int c = 0; c < num_configs(); ++c) by[configs[c].player].push_back(c);
  return by;
}

namespace {

std::map<std::string, int> index_table(const std::vector<std::string>& ids,
                                       const char* what) {
  std::map<std::string, int> table;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i].empty()) throw MalformedInstance(std::string(what) + " id is empty");
    auto [it, fresh] = table.emplace(ids[i], static_cast<int>(i));
    if (!fresh) throw MalformedInstance("duplicate " + std::string(what) + " id '" + ids[i] + "'");
  }
  return table;
}

}  // namespace

Hypergraph make_hypergraph(std::vector<std::string> players,
                           std::vector<std::string> resources,
                           const std::vector<RawConfig>& raw) {
  if (players.empty()) throw MalformedInstance("no players");
  if (resources.empty()) throw MalformedInstance("no resources");
  auto ptab = index_table(players, "player");
  auto rtab = index_table(resources, "resource");
  for (const auto& [id, _] : ptab)
    if (rtab.count(id))
      throw MalformedInstance("id '" + id + "' is both a player and a resource");

  Hypergraph h;
  h.players = std::move(players);
  h.resources = std::move(resources);
  h.configs.reserve(raw.size());
  for (std::size_t c = 0; c < raw.size(); ++c) {
    const RawConfig& rc = raw[c];
    auto pit = ptab.find(rc.player);
    if (pit == ptab.end())
      throw MalformedInstance("config " + std::to_string(c) + ": unknown player '" + rc.player + "'");
    Configuration cfg;
    cfg.player = pit->second;
    for (const std::string& rid : rc.resources) {
      auto rit = rtab.find(rid);
      if (rit == rtab.end()) {
        if (ptab.count(rid))
          throw MalformedInstance("config " + std::to_string(c) +
                                  ": vertex '" + rid + "' is a second player in the edge");
        throw MalformedInstance("config " + std::to_string(c) + ": unknown resource '" + rid + "'");
      }
      cfg.resources.push_back(rit->second);
    }
    if (cfg.resources.empty())
      throw MalformedInstance("config " + std::to_string(c) + " has no resources");
    std::sort(cfg.resources.begin(), cfg.resources.end());
    if (std::adjacent_find(cfg.resources.begin(), cfg.resources.end()) != cfg.resources.end())
      throw MalformedInstance("config " + std::to_string(c) + " repeats a resource");
    h.configs.push_back(std::move(cfg));
  }
  return h;
}

DegreeProfile validate(const Hypergraph& h) {
  if (h.players.empty()) throw MalformedInstance("no players");
  if (h.resources.empty()) throw MalformedInstance("no resources");
  index_table(h.players, "player");
  index_table(h.resources, "resource");

  DegreeProfile prof;
  prof.player_degree.assign(h.players.size(), 0);
  prof.resource_degree.assign(h.resources.size(), 0);
  for (int c = 0; c < h.num_configs(); ++c) {
    const Configuration& cfg = h.configs[c];
    if (cfg.player < 0 || cfg.player >= h.num_players())
      throw MalformedInstance("config " + std::to_string(c) + ": player index out of range");
    if (cfg.resources.empty())
      throw MalformedInstance("config " + std::to_string(c) + " has no resources");
    if (!std::is_sorted(cfg.resources.begin(), cfg.resources.end()) ||
        std::adjacent_find(cfg.resources.begin(), cfg.resources.end()) != cfg.resources.end())
      throw MalformedInstance("config " + std::to_string(c) + ": resources not sorted/distinct");
    if (cfg.resources.front() < 0 || cfg.resources.back() >= h.num_resources())
      throw MalformedInstance("config " + std::to_string(c) + ": resource index out of range");
    prof.player_degree[cfg.player]++;
    for (int r : cfg.resources) prof.resource_degree[r]++;
  }

  int pmax = 0, pmin = prof.player_degree.empty() ? 0 : prof.player_degree[0];
  for (int d : prof.player_degree) {
    pmax = std::max(pmax, d);
    pmin = std::min(pmin, d);
  }
  int rmax = 0;
  for (int d : prof.resource_degree) rmax = std::max(rmax, d);
  prof.is_regular = (pmin == pmax) && pmax > 0 && rmax <= pmax;
  prof.ell = prof.is_regular ? pmax : std::max(pmax, rmax);
  return prof;
}

int size_class_of(long long size, long long ell) {
  if (ell < 2) throw Error("size_class_of: ell must be >= 2");
  if (size < 1) throw Error("size_class_of: size must be >= 1");
  // class k holds sizes in [ell^(k+3), ell^(k+4)); class 0 additionally
  // holds everything below ell^4.
  long long bound = ell * ell * ell * ell;  // caller scales are desk-sized
  int k = 0;
  while (size >= bound) {
    ++k;
    if (bound > (1LL << 62) / ell) break;  // bound would overflow; size < next bound
    bound *= ell;
  }
  return k;
}

SizeClassIndex size_classes(const Hypergraph& h, long long ell) {
  if (ell < 2) throw Error("size_classes: ell must be >= 2");
  SizeClassIndex idx;
  idx.ell = ell;
  idx.class_of.resize(h.configs.size());
  int maxk = -1;
  for (int c = 0; c < h.num_configs(); ++c) {
    int k = size_class_of(h.configs[c].size(), ell);
    idx.class_of[c] = k;
    maxk = std::max(maxk, k);
  }
  idx.depth = maxk + 1;
  idx.klass.assign(idx.depth, {});
  for (int c = 0; c < h.num_configs(); ++c) idx.klass[idx.class_of[c]].push_back(c);
  return idx;
}

MaybeAlpha achieved_alpha(const Hypergraph& h, const RelaxedMatching& sol) {
  if (sol.entries.size() != h.players.size()) return std::nullopt;
  Rat best(0);
  for (const auto& e : sol.entries) {
    if (!e || e->kept.empty()) return std::nullopt;
    Rat ratio(h.configs[e->config].size(), static_cast<int>(e->kept.size()));
    ratio.canonicalize();
    if (ratio > best) best = ratio;
  }
  return best;
}

VerifyReport verify(const Hypergraph& h, const RelaxedMatching& sol,
                    const Rat& alpha_target) {
  if (sol.entries.size() != h.players.size())
    throw MalformedSolution("solution covers " + std::to_string(sol.entries.size()) +
                            " players, instance has " + std::to_string(h.players.size()));
  VerifyReport rep;
  rep.target = alpha_target;

  std::vector<int> kept_by(h.num_resources(), -1);
  for (int p = 0; p < h.num_players(); ++p) {
    const auto& e = sol.entries[p];
    if (!e) {
      rep.violations.push_back({Violation::PlayerUncovered, "player " + h.players[p]});
      continue;
    }
    if (e->config < 0 || e->config >= h.num_configs())
      throw MalformedSolution("player " + h.players[p] + ": config index out of range");
    const Configuration& cfg = h.configs[e->config];
    if (cfg.player != p)
      rep.violations.push_back({Violation::WrongPlayer,
                                "player " + h.players[p] + " uses a config of " + h.players[cfg.player]});
    if (e->kept.empty())
      rep.violations.push_back({Violation::KeptEmpty, "player " + h.players[p]});
    std::set<int> seen;
    for (int r : e->kept) {
      if (r < 0 || r >= h.num_resources())
        throw MalformedSolution("player " + h.players[p] + ": kept resource index out of range");
      if (!seen.insert(r).second)
        throw MalformedSolution("player " + h.players[p] + ": kept resource repeated");
      if (!cfg.contains(r))
        rep.violations.push_back({Violation::KeptNotSubset,
                                  "player " + h.players[p] + " keeps " + h.resources[r] +
                                      " outside its config"});
      if (kept_by[r] >= 0)
        rep.violations.push_back({Violation::Overlap,
                                  h.resources[r] + " kept by both " + h.players[kept_by[r]] +
                                      " and " + h.players[p]});
      else
        kept_by[r] = p;
    }
  }

  rep.alpha = achieved_alpha(h, sol);
  rep.accepted = rep.violations.empty() && rep.alpha && *rep.alpha <= alpha_target;
  return rep;
}

}  // namespace csc
