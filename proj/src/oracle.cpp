#include "csc/oracle.hpp"

#include <algorithm>
#include <set>

#include "csc/errors.hpp"
#include "csc/flow.hpp"

namespace csc {

namespace {

// Feasibility of demand t(C) = ceil(|C| / alpha) for every chosen config:
// source -> config (cap t), config -> resource (cap 1), resource -> sink
// (cap 1). Saturation is equivalent to disjoint kept sets of those sizes.
struct SelectionChecker {
  const Hypergraph& h;
  const std::vector<int>& chosen;
  std::vector<int> sizes;
  long long total_size = 0;

  SelectionChecker(const Hypergraph& hg, const std::vector<int>& sel) : h(hg), chosen(sel) {
    for (std::size_t p = 0; p < sel.size(); ++p) {
      const Configuration& cfg = h.configs[sel[p]];
      if (cfg.player != static_cast<int>(p))
        throw Error("selection assigns player " + h.players[p] + " a foreign config");
      sizes.push_back(cfg.size());
      total_size += cfg.size();
    }
  }

  std::vector<long long> demands(const Rat& alpha) const {
    std::vector<long long> d(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) d[i] = rat_ceil(Rat(sizes[i]) / alpha);
    return d;
  }

  bool feasible(const std::vector<long long>& demand,
                RelaxedMatching* witness = nullptr) const {
    long long need = 0;
    for (long long d : demand) need += d;
    if (need > h.num_resources()) return false;

    // Distinct resources touched by the selection, densely renumbered.
    std::vector<int> local(h.num_resources(), -1);
    std::vector<int> rids;
    for (int c : chosen)
      for (int r : h.configs[c].resources)
        if (local[r] < 0) {
          local[r] = static_cast<int>(rids.size());
          rids.push_back(r);
        }

    const int m = static_cast<int>(chosen.size());
    const int s = 0, t = 1;
    MaxFlow net(2 + m + static_cast<int>(rids.size()));
    std::vector<std::vector<int>> unit_arcs(m);
    for (int i = 0; i < m; ++i) {
      net.add_arc(s, 2 + i, demand[i]);
      for (int r : h.configs[chosen[i]].resources)
        unit_arcs[i].push_back(net.add_arc(2 + i, 2 + m + local[r], 1));
    }
    for (std::size_t j = 0; j < rids.size(); ++j)
      net.add_arc(2 + m + static_cast<int>(j), t, 1);

    if (net.calc(s, t) < need) return false;
    if (witness) {
      *witness = RelaxedMatching(chosen.size());
      for (int i = 0; i < m; ++i) {
        MatchEntry e;
        e.config = chosen[i];
        const auto& res = h.configs[chosen[i]].resources;
        for (std::size_t a = 0; a < unit_arcs[i].size(); ++a)
          if (net.flow_on(unit_arcs[i][a]) > 0) e.kept.push_back(res[a]);
        std::sort(e.kept.begin(), e.kept.end());
        witness->entries[i] = std::move(e);
      }
    }
    return true;
  }
};

std::vector<Rat> alpha_candidates(const Hypergraph& h, const std::vector<int>& chosen) {
  std::set<Rat> cand;
  for (int c : chosen) {
    int sz = h.configs[c].size();
    for (int t = 1; t <= sz; ++t) {
      Rat r(sz, t);
      r.canonicalize();
      cand.insert(r);
    }
  }
  return {cand.begin(), cand.end()};
}

}  // namespace

SelectionAlpha min_alpha_for_selection_witnessed(const Hypergraph& h,
                                                 const std::vector<int>& chosen) {
  if (chosen.size() != h.players.size())
    throw Error("selection must fix one config per player");
  SelectionChecker check(h, chosen);
  auto cand = alpha_candidates(h, chosen);

  // Feasibility is monotone in alpha, so binary search over the candidate
  // grid finds the optimum; the optimum is always on the grid.
  std::size_t lo = 0, hi = cand.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (check.feasible(check.demands(cand[mid])))
      hi = mid;
    else
      lo = mid + 1;
  }
  if (lo == cand.size()) return {std::nullopt, RelaxedMatching(chosen.size())};

  SelectionAlpha out;
  out.alpha = cand[lo];
  check.feasible(check.demands(cand[lo]), &out.witness);
  return out;
}

MaybeAlpha min_alpha_for_selection(const Hypergraph& h, const std::vector<int>& chosen) {
  return min_alpha_for_selection_witnessed(h, chosen).alpha;
}

bool selection_beats(const Hypergraph& h, const std::vector<int>& chosen, const Rat& bound) {
  SelectionChecker check(h, chosen);
  auto cand = alpha_candidates(h, chosen);
  // Largest candidate strictly below the bound decides: feasibility at any
  // alpha < bound implies feasibility there.
  auto it = std::lower_bound(cand.begin(), cand.end(), bound);
  if (it == cand.begin()) return false;
  return check.feasible(check.demands(*std::prev(it)));
}

OracleResult brute_force_min_alpha(const Hypergraph& h, const OracleLimits& limits) {
  auto by_player = h.configs_by_player();
  OracleResult out;
  long long space = 1;
  for (const auto& list : by_player) {
    if (list.empty()) return out;  // player uncoverable: alpha stays infinite
    if (space > limits.max_selections / static_cast<long long>(list.size()))
      throw TooLarge("selection space exceeds " + std::to_string(limits.max_selections));
    space *= static_cast<long long>(list.size());
  }

  const int m = h.num_players();
  std::vector<std::size_t> pick(m, 0);
  std::vector<int> chosen(m);
  while (true) {
    for (int p = 0; p < m; ++p) chosen[p] = by_player[p][pick[p]];
    out.selections_tried++;

    if (!out.alpha) {
      SelectionAlpha sa = min_alpha_for_selection_witnessed(h, chosen);
      if (sa.alpha) {
        out.alpha = sa.alpha;
        out.best_selection = chosen;
        out.witness = std::move(sa.witness);
      }
    } else if (selection_beats(h, chosen, *out.alpha)) {
      SelectionAlpha sa = min_alpha_for_selection_witnessed(h, chosen);
      if (sa.alpha && *sa.alpha < *out.alpha) {
        out.alpha = sa.alpha;
        out.best_selection = chosen;
        out.witness = std::move(sa.witness);
      }
    }
    if (out.alpha && *out.alpha == 1) break;  // nothing can beat a perfect matching

    int p = m - 1;
    while (p >= 0 && ++pick[p] == by_player[p].size()) pick[p--] = 0;
    if (p < 0) break;
  }
  return out;
}

}  // namespace csc
