#include "csc/select.hpp"

#include <algorithm>
#include <cmath>

#include "csc/errors.hpp"
#include "csc/rng.hpp"

namespace csc {

namespace {

void validate_selection(const Hypergraph& h, const Selection& sel) {
  if (static_cast<int>(sel.choice.size()) != h.num_players())
    throw Error("selection: one choice per player required");
  for (int i = 0; i < h.num_players(); ++i) {
    int c = sel.choice[i];
    if (c < 0 || c >= h.num_configs())
      throw Error("selection: configuration index out of range");
    if (h.configs[c].player != i)
      throw Error("selection: configuration belongs to another player");
  }
}

// observed[c][h] = coverage of C cap R_h by selected class-h configurations.
std::vector<std::vector<long long>> observed_matrix(const Hypergraph& h,
                                                    const SizeClassIndex& idx,
                                                    const Hierarchy& hier,
                                                    const std::vector<Bits>& masks,
                                                    const Selection& sel) {
  std::vector<std::vector<long long>> obs(h.num_configs());
  for (int c = 0; c < h.num_configs(); ++c)
    obs[c].assign(idx.class_of[c] + 1, 0);
  for (int i = 0; i < h.num_players(); ++i) {
    int chosen = sel.choice[i];
    int kh = idx.class_of[chosen];
    for (int c = 0; c < h.num_configs(); ++c) {
      if (kh > idx.class_of[c]) continue;
      obs[c][kh] += and_count(masks[chosen], masks[c], hier.level[kh]);
    }
  }
  return obs;
}

std::vector<mpz_class> ell_powers(long long ell, int depth) {
  std::vector<mpz_class> p(depth + 1);
  p[0] = 1;
  mpz_class l = static_cast<long>(ell);
  for (int k = 1; k <= depth; ++k) p[k] = p[k - 1] * l;
  return p;
}

}  // namespace

EventTable build_events(const Hypergraph& h, const SizeClassIndex& idx,
                        const Hierarchy& hier, const SelectParams& params) {
  EventTable table;
  table.masks = config_masks(h);
  table.first_event.resize(h.num_configs());

  std::vector<int> degree(h.num_players(), 0);
  for (const Configuration& c : h.configs) ++degree[c.player];

  Rat lnl = rat_ln(hier.ell, params.log_bits);
  for (int c = 0; c < h.num_configs(); ++c) {
    int k = idx.class_of[c];
    table.first_event[c] = static_cast<int>(table.events.size());
    for (int lev = 0; lev <= k; ++lev) {
      BadEvent e;
      e.config = c;
      e.k = k;
      e.h = lev;
      e.cap = and_count(table.masks[c], hier.level[lev]);
      if (e.cap > 0) {
        for (int other : idx.klass[lev]) {
          long long ov = and_count(table.masks[other], table.masks[c], hier.level[lev]);
          if (ov == 0) continue;
          int owner = h.configs[other].player;
          e.expectation += make_rat(ov) / degree[owner];
          e.players.push_back(owner);
        }
        std::sort(e.players.begin(), e.players.end());
        e.players.erase(std::unique(e.players.begin(), e.players.end()),
                        e.players.end());
        Rat dev = params.dev_near * make_rat(e.cap) * lnl;
        if (lev <= k - 6) dev = params.dev_far * make_rat(e.cap) * lnl / make_rat(hier.ell);
        e.threshold = e.expectation + dev;
      }
      table.events.push_back(std::move(e));
    }
  }
  return table;
}

double lll_weight(const BadEvent& e, long long ell) {
  double l = static_cast<double>(ell);
  return std::exp(-static_cast<double>(e.cap) / std::pow(l, 9) - 18 * std::log(l));
}

std::vector<long long> evaluate_events(const Hypergraph& h, const SizeClassIndex& idx,
                                       const Hierarchy& hier, const EventTable& table,
                                       const Selection& sel) {
  validate_selection(h, sel);
  std::vector<long long> obs(table.events.size(), 0);
  for (int i = 0; i < h.num_players(); ++i) {
    int chosen = sel.choice[i];
    int kh = idx.class_of[chosen];
    for (int c = 0; c < h.num_configs(); ++c) {
      if (kh > idx.class_of[c]) continue;
      obs[table.first_event[c] + kh] +=
          and_count(table.masks[chosen], table.masks[c], hier.level[kh]);
    }
  }
  return obs;
}

SelectReport select_configs(const Hypergraph& h, const SizeClassIndex& idx,
                            const Hierarchy& hier, const SelectParams& params,
                            std::uint64_t seed) {
  auto own = h.configs_by_player();
  for (int i = 0; i < h.num_players(); ++i)
    if (own[i].empty())
      throw Error("select: player " + h.players[i] + " has no configurations");

  EventTable table = build_events(h, idx, hier, params);
  long long budget = params.max_rounds > 0 ? params.max_rounds
                                           : 10LL * h.num_players();

  SelectReport rep;
  rep.events = static_cast<long long>(table.events.size());
  for (const BadEvent& e : table.events)
    if (e.cap == 0) ++rep.vacuous;

  Rng rng(substream(seed, "select"));
  Selection sel;
  sel.choice.resize(h.num_players());
  for (int i = 0; i < h.num_players(); ++i)
    sel.choice[i] = own[i][rng.index(own[i].size())];

  Selection best = sel;
  Rat best_score{-1};
  for (;;) {
    std::vector<long long> obs = evaluate_events(h, idx, hier, table, sel);
    Rat score{0};
    int firing = -1;
    for (std::size_t e = 0; e < table.events.size(); ++e) {
      // An event fires when a positive observation reaches the threshold;
      // obs == 0 never fires (degenerate zero thresholds stay quiet).
      if (obs[e] == 0 || make_rat(obs[e]) < table.events[e].threshold) continue;
      if (firing < 0) firing = static_cast<int>(e);
      if (table.events[e].threshold > 0)
        score += make_rat(obs[e]) / table.events[e].threshold;
      else
        score += make_rat(obs[e]);
    }
    if (best_score < 0 || score < best_score) {
      best = sel;
      best_score = score;
    }
    if (firing < 0) {
      rep.sel = sel;
      rep.converged = true;
      rep.score = 0;
      return rep;
    }
    if (rep.rounds >= budget) {
      rep.sel = best;
      rep.converged = false;
      rep.score = best_score;
      return rep;
    }
    for (int p : table.events[firing].players)
      sel.choice[p] = own[p][rng.index(own[p].size())];
    ++rep.rounds;
  }
}

namespace {

SelectionBoundReport check_bound_impl(const Hypergraph& h, const SizeClassIndex& idx,
                                      const Hierarchy& hier, const Selection& sel,
                                      const Rat& coeff, int log_bits,
                                      bool chosen_only) {
  validate_selection(h, sel);
  SelectionBoundReport rep;
  auto masks = config_masks(h);
  auto obs = observed_matrix(h, idx, hier, masks, sel);
  auto pow = ell_powers(hier.ell, idx.depth);

  Rat slack = coeff * make_rat(idx.depth + hier.ell, hier.ell) *
              rat_ln(hier.ell, log_bits);

  std::vector<bool> chosen(h.num_configs(), false);
  for (int c : sel.choice) chosen[c] = true;

  for (int c = 0; c < h.num_configs(); ++c) {
    if (chosen_only && !chosen[c]) continue;
    int k = idx.class_of[c];
    Rat lhs{0}, mass{0};
    for (int j = k; j >= 0; --j) {
      lhs += Rat(pow[j]) * make_rat(obs[c][j]);
      long long t = 0;
      for (int other : idx.klass[j])
        t += and_count(masks[other], masks[c], hier.level[j]);
      mass += Rat(pow[j]) * make_rat(t);
      Rat rhs = slack * h.configs[c].size();
      if (!chosen_only) rhs += mass / make_rat(hier.ell);
      ++rep.checks;
      if (rhs > 0 && lhs / rhs > rep.max_ratio) rep.max_ratio = lhs / rhs;
      if (lhs > rhs) rep.failures.push_back({c, j, lhs, rhs});
    }
  }
  rep.ok = rep.failures.empty();
  return rep;
}

}  // namespace

SelectionBoundReport check_selection_bound(const Hypergraph& h, const SizeClassIndex& idx,
                                           const Hierarchy& hier, const Selection& sel,
                                           const Rat& coeff, int log_bits) {
  return check_bound_impl(h, idx, hier, sel, coeff, log_bits, false);
}

SelectionBoundReport check_chosen_bound(const Hypergraph& h, const SizeClassIndex& idx,
                                        const Hierarchy& hier, const Selection& sel,
                                        const Rat& coeff, int log_bits) {
  return check_bound_impl(h, idx, hier, sel, coeff, log_bits, true);
}

}  // namespace csc
