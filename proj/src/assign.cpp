#include "csc/assign.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "csc/errors.hpp"
#include "csc/flow.hpp"
#include "csc/rng.hpp"

namespace csc {

long long gamma_value(int depth, long long ell, const Rat& c_gamma,
                      int log_bits) {
  if (ell < 2) throw Error("branching factor must be at least 2");
  if (depth < 1) throw Error("class depth must be positive");
  Rat g = c_gamma * make_rat(depth + ell, ell) * rat_ln(ell, log_bits);
  long long v = rat_floor(g);
  return v < 1 ? 1 : v;
}

void check_assignment(const Hypergraph& h, const GoodAssignment& g) {
  if (g.holdings.size() != h.configs.size())
    throw Error("holdings must list every configuration");
  if (static_cast<int>(g.loads.size()) != h.num_resources())
    throw Error("loads must list every resource");
  if (g.gamma < 1) throw Error("load cap must be positive");
  std::vector<long long> seen(h.num_resources(), 0);
  for (std::size_t c = 0; c < g.holdings.size(); ++c) {
    const std::vector<int>& hold = g.holdings[c];
    for (std::size_t i = 0; i < hold.size(); ++i) {
      int r = hold[i];
      if (r < 0 || r >= h.num_resources())
        throw Error("held resource out of range");
      if (i > 0 && hold[i - 1] >= r)
        throw Error("holdings must be sorted and distinct");
      if (!h.configs[c].contains(r))
        throw Error("held resource outside its configuration");
      ++seen[r];
    }
  }
  for (int r = 0; r < h.num_resources(); ++r) {
    if (seen[r] != g.loads[r]) throw Error("loads inconsistent with holdings");
    if (seen[r] > g.gamma) throw Error("resource load exceeds the cap");
  }
}

AssignOutcome good_assignment(const Hypergraph& h,
                              const std::vector<int>& family,
                              const Bits& avail,
                              const std::vector<long long>& alpha,
                              long long gamma, const Rat& eps) {
  if (gamma < 1) throw Error("load cap must be positive");
  if (alpha.size() != family.size())
    throw Error("one demand per configuration expected");
  if (eps < 0 || eps >= 1) throw Error("demand slack must lie in [0, 1)");
  std::vector<char> listed(h.configs.size(), 0);
  for (int c : family) {
    if (c < 0 || c >= static_cast<int>(h.configs.size()))
      throw Error("configuration index out of range");
    if (listed[c]) throw Error("family lists a configuration twice");
    listed[c] = 1;
  }

  Rat keep = Rat(1) - eps;
  std::vector<long long> want(family.size());
  long long target = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (alpha[i] < 0) throw Error("negative demand");
    want[i] = rat_floor(keep * make_rat(alpha[i]));
    target += want[i];
  }

  MaxFlow net(2);
  const int S = 0, T = 1;
  std::vector<int> cnode(family.size());
  for (int& v : cnode) v = net.add_node();
  std::vector<int> rnode(h.num_resources(), -1);
  struct Unit {
    int arc, pos, res;
  };
  std::vector<Unit> units;
  for (std::size_t i = 0; i < family.size(); ++i) {
    net.add_arc(S, cnode[i], want[i]);
    for (int r : h.configs[family[i]].resources) {
      if (!avail.test(r)) continue;
      if (rnode[r] < 0) {
        rnode[r] = net.add_node();
        net.add_arc(rnode[r], T, gamma);
      }
      units.push_back({net.add_arc(cnode[i], rnode[r], 1),
                       static_cast<int>(i), r});
    }
  }

  AssignOutcome res;
  if (net.calc(S, T) == target) {
    res.feasible = true;
    res.out.holdings.assign(h.configs.size(), {});
    res.out.loads.assign(h.num_resources(), 0);
    res.out.gamma = gamma;
    for (const Unit& u : units)
      if (net.flow_on(u.arc) > 0) {
        res.out.holdings[family[u.pos]].push_back(u.res);
        ++res.out.loads[u.res];
      }
  } else {
    std::vector<char> side = net.min_cut_side(S);
    for (std::size_t i = 0; i < family.size(); ++i)
      if (side[cnode[i]]) res.witness.push_back(family[i]);
  }
  return res;
}

LiftResult lift_assignment(const Hypergraph& h, const std::vector<int>& family,
                           const GoodAssignment& prev, const Bits& avail,
                           long long ell, long long gamma,
                           const LiftParams& params) {
  if (ell < 1) throw Error("branching factor must be positive");
  if (ell == 1) {
    // Degenerate hierarchy: consecutive levels coincide.
    LiftResult res;
    res.out = prev;
    res.multiplier = 1;
    return res;
  }
  std::vector<long long> base(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    int c = family[i];
    if (c < 0 || c >= static_cast<int>(prev.holdings.size()))
      throw Error("configuration index out of range");
    base[i] = ell * static_cast<long long>(prev.holdings[c].size());
  }

  LiftResult res;
  Rat ln_n = rat_ln(h.num_resources(), params.log_bits);
  if (ln_n < params.eps_min) {
    ln_n = params.eps_min;
    res.clamped = true;
  }
  Rat factor = Rat(1) - Rat(1) / ln_n;
  if (factor < params.eps_min) {
    factor = params.eps_min;
    res.clamped = true;
  }

  // Demand multipliers: ell / (1 + 1/(2 ln n)), then ell * factor^t,
  // finally 1. Multiplier 1 asks for exactly the held amounts, which the
  // previous holdings themselves satisfy whenever they survive into avail.
  Rat geo = make_rat(ell);
  Rat mult = make_rat(ell) / (Rat(1) + Rat(1) / (Rat(2) * ln_n));
  bool last = false;
  while (true) {
    if (mult <= 1) {
      mult = 1;
      last = true;
    }
    Rat eps = Rat(1) - mult / make_rat(ell);
    AssignOutcome a = good_assignment(h, family, avail, base, gamma, eps);
    ++res.attempts;
    if (a.feasible) {
      res.out = std::move(a.out);
      res.multiplier = mult;
      return res;
    }
    if (last)
      throw LiftCollapsed("demand ladder exhausted with " +
                          std::to_string(a.witness.size()) +
                          " deficient configurations");
    geo *= factor;
    mult = geo;
  }
}

ReconstructResult reconstruct(const Hypergraph& h, const SizeClassIndex& idx,
                              const Hierarchy& hier, const Selection& sel,
                              long long gamma, std::uint64_t seed,
                              const LiftParams& params) {
  if (gamma < 1) throw Error("load cap must be positive");
  if (static_cast<int>(sel.choice.size()) != h.num_players())
    throw Error("selection must cover every player");
  const int d = idx.depth;
  if (static_cast<int>(hier.level.size()) < d)
    throw Error("hierarchy shallower than the class index");

  std::vector<std::vector<int>> entering(d);
  for (int p = 0; p < h.num_players(); ++p) {
    int c = sel.choice[p];
    if (c < 0 || c >= static_cast<int>(h.configs.size()) ||
        h.configs[c].player != p)
      throw Error("selection entry " + std::to_string(p) +
                  " is not a configuration of that player");
    entering[idx.class_of[c]].push_back(c);
  }

  ReconstructResult res;
  GoodAssignment cur;
  cur.holdings.assign(h.configs.size(), {});
  cur.loads.assign(h.num_resources(), 0);
  cur.gamma = gamma;
  std::vector<int> family;
  Rng rng(substream(seed, "reconstruct"));

  for (int j = d; j >= 1; --j) {
    LevelTrace tr;
    tr.j = j;
    const Bits& lvl = hier.level[j - 1];

    if (!family.empty()) {
      LiftResult lr =
          lift_assignment(h, family, cur, lvl, hier.ell, gamma, params);
      cur = std::move(lr.out);
      tr.lift_multiplier = lr.multiplier;
      tr.lift_attempts = lr.attempts;
      if (lr.clamped) res.lift_clamped = true;
    }

    // The entering class takes its surviving resources, skipping any
    // resource wanted by more than gamma of its configurations.
    const std::vector<int>& enter = entering[j - 1];
    std::vector<long long> a(h.num_resources(), 0);
    for (int c : enter)
      for (int r : h.configs[c].resources)
        if (lvl.test(r)) ++a[r];
    std::vector<char> banned(h.num_resources(), 0);
    for (int r = 0; r < h.num_resources(); ++r)
      if (a[r] > gamma) {
        banned[r] = 1;
        a[r] = 0;
        ++tr.phase2_excluded;
      }
    for (int c : enter) {
      std::vector<int>& hold = cur.holdings[c];
      for (int r : h.configs[c].resources)
        if (lvl.test(r) && !banned[r]) hold.push_back(r);
    }

    // Conflict resources exceed the cap once both sides count; the lifted
    // side pays. cur.loads still counts only the lifted side here.
    std::vector<char> conflict(h.num_resources(), 0);
    for (int r = 0; r < h.num_resources(); ++r)
      if (a[r] + cur.loads[r] > gamma) {
        conflict[r] = 1;
        ++tr.conflicts;
      }

    std::vector<int> rec_at(h.configs.size(), -1);
    for (int c : family) {
      MuRecord rec;
      rec.config = c;
      for (int r : cur.holdings[c])
        if (conflict[r]) {
          rec.mu += make_rat(a[r] + cur.loads[r] - gamma, cur.loads[r]);
          rec.s += a[r];
        }
      rec_at[c] = static_cast<int>(tr.mu.size());
      tr.mu.push_back(std::move(rec));
    }

    for (int r = 0; r < h.num_resources(); ++r) {
      if (!conflict[r]) continue;
      long long need = a[r] + cur.loads[r] - gamma;
      std::vector<int> holders;
      for (int c : family)
        if (std::binary_search(cur.holdings[c].begin(), cur.holdings[c].end(),
                               r))
          holders.push_back(c);
      if (static_cast<long long>(holders.size()) != cur.loads[r])
        throw Error("internal: holder count does not match the load");
      for (std::size_t pi :
           rng.sample_indices(holders.size(), static_cast<std::size_t>(need))) {
        int c = holders[pi];
        std::vector<int>& hold = cur.holdings[c];
        hold.erase(std::lower_bound(hold.begin(), hold.end(), r));
        --cur.loads[r];
        ++tr.mu[rec_at[c]].lost;
      }
      tr.deletions += need;
    }

    // mu sits in [s/gamma^2, 2s/gamma]; both ends are exact rationals
    for (const MuRecord& rec : tr.mu) {
      Rat lo = make_rat(rec.s) / (make_rat(gamma) * make_rat(gamma));
      Rat up = make_rat(2 * rec.s, gamma);
      if (rec.mu < lo || rec.mu > up) tr.mu_window_ok = false;
    }

    for (int r = 0; r < h.num_resources(); ++r) {
      cur.loads[r] += a[r];
      if (cur.loads[r] > gamma)
        throw Error("internal: load cap violated after a merge");
    }
    family.insert(family.end(), enter.begin(), enter.end());
    std::sort(family.begin(), family.end());
    res.levels.push_back(std::move(tr));
  }

  check_assignment(h, cur);
  res.out = std::move(cur);
  return res;
}

FinalizeResult finalize_matching(const Hypergraph& h, const Selection& sel,
                                 const GoodAssignment& asg, long long gamma,
                                 long long c_final) {
  if (static_cast<int>(sel.choice.size()) != h.num_players())
    throw Error("selection must cover every player");
  if (gamma < 1 || c_final < 1)
    throw Error("positive cap and demand divisor expected");
  if (asg.holdings.size() != h.configs.size())
    throw Error("holdings must list every configuration");
  const int m = h.num_players();
  std::vector<int> chosen(m);
  for (int p = 0; p < m; ++p) {
    int c = sel.choice[p];
    if (c < 0 || c >= static_cast<int>(h.configs.size()) ||
        h.configs[c].player != p)
      throw Error("selection entry " + std::to_string(p) +
                  " is not a configuration of that player");
    chosen[p] = c;
  }

  struct Packed {
    bool ok = false;
    std::vector<std::vector<int>> kept;
    std::vector<int> deficient;
  };
  auto pack = [&](const std::vector<long long>& q) {
    MaxFlow net(2);
    const int S = 0, T = 1;
    std::vector<int> cnode(m);
    for (int& v : cnode) v = net.add_node();
    std::vector<int> rnode(h.num_resources(), -1);
    struct Unit {
      int arc, player, res;
    };
    std::vector<Unit> units;
    long long target = 0;
    for (int i = 0; i < m; ++i) {
      net.add_arc(S, cnode[i], q[i]);
      target += q[i];
      for (int r : asg.holdings[chosen[i]]) {
        if (rnode[r] < 0) {
          rnode[r] = net.add_node();
          net.add_arc(rnode[r], T, 1);
        }
        units.push_back({net.add_arc(cnode[i], rnode[r], 1), i, r});
      }
    }
    Packed out;
    out.ok = net.calc(S, T) == target;
    if (out.ok) {
      out.kept.assign(m, {});
      for (const Unit& u : units)
        if (net.flow_on(u.arc) > 0) out.kept[u.player].push_back(u.res);
    } else {
      std::vector<char> side = net.min_cut_side(S);
      for (int i = 0; i < m; ++i)
        if (side[cnode[i]]) out.deficient.push_back(chosen[i]);
    }
    return out;
  };

  FinalizeResult res;
  {
    std::vector<long long> qp(m);
    bool allpos = true;
    for (int i = 0; i < m; ++i) {
      qp[i] = static_cast<long long>(h.configs[chosen[i]].size()) /
              (c_final * gamma);
      if (qp[i] < 1) allpos = false;
    }
    res.nominal_demand = allpos && pack(qp).ok;
  }

  // Uniform-scale demands max(1, floor(s |C|)) are monotone in s, so the
  // largest feasible s among the jump points t/|C| is found by bisection.
  std::vector<Rat> grid;
  for (int i = 0; i < m; ++i) {
    long long sz = h.configs[chosen[i]].size();
    for (long long t = 1; t <= sz; ++t) grid.push_back(make_rat(t, sz));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  auto demands_at = [&](const Rat& s) {
    std::vector<long long> q(m);
    for (int i = 0; i < m; ++i) {
      long long v =
          rat_floor(s * make_rat(static_cast<long long>(h.configs[chosen[i]].size())));
      q[i] = v < 1 ? 1 : v;
    }
    return q;
  };

  Packed best = pack(demands_at(grid.front()));
  if (!best.ok)
    throw FinalizeInfeasible(
        "cannot keep even one resource per chosen configuration",
        std::move(best.deficient));
  std::size_t lo = 0, hi = grid.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    Packed p = pack(demands_at(grid[mid]));
    if (p.ok) {
      lo = mid;
      best = std::move(p);
    } else {
      hi = mid - 1;
    }
  }
  res.scale = grid[lo];

  // Unkept held resources go to the holder with the worst kept ratio.
  std::vector<int> keeper(h.num_resources(), -1);
  for (int i = 0; i < m; ++i)
    for (int r : best.kept[i]) keeper[r] = i;
  std::vector<std::vector<int>> holders(h.num_resources());
  for (int i = 0; i < m; ++i)
    for (int r : asg.holdings[chosen[i]]) holders[r].push_back(i);
  for (int r = 0; r < h.num_resources(); ++r) {
    if (keeper[r] >= 0 || holders[r].empty()) continue;
    int pick = -1;
    Rat worst{0};
    for (int i : holders[r]) {
      Rat ratio = make_rat(static_cast<long long>(h.configs[chosen[i]].size()),
                           static_cast<long long>(best.kept[i].size()));
      if (pick < 0 || ratio > worst ||
          (ratio == worst && chosen[i] < chosen[pick])) {
        pick = i;
        worst = ratio;
      }
    }
    best.kept[pick].push_back(r);
    keeper[r] = pick;
  }

  res.matching.entries.assign(m, std::nullopt);
  for (int i = 0; i < m; ++i) {
    std::sort(best.kept[i].begin(), best.kept[i].end());
    res.matching.entries[i] = MatchEntry{chosen[i], std::move(best.kept[i])};
  }
  res.alpha = achieved_alpha(h, res.matching).value();
  return res;
}

}  // namespace csc
