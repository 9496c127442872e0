#include "csc/reduce.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "csc/errors.hpp"

namespace csc {

namespace {

Rat pow2r(long long e) {
  if (e >= 0) return Rat(mpz_class(1) << static_cast<unsigned long>(e));
  Rat r(mpz_class(1), mpz_class(1) << static_cast<unsigned long>(-e));
  r.canonicalize();
  return r;
}

long long clog2(long long v) {
  long long e = 0;
  while ((1LL << e) < v) ++e;
  return e;
}

// exponent j >= 0 when v = 2^-j, nullopt otherwise
std::optional<long long> neg_pow2_exp(const Rat& v) {
  if (v <= 0) return std::nullopt;
  Rat c = v;
  c.canonicalize();
  if (c.get_num() != 1) return std::nullopt;
  const mpz_class& den = c.get_den();
  if (mpz_popcount(den.get_mpz_t()) != 1) return std::nullopt;
  return static_cast<long long>(mpz_scan1(den.get_mpz_t(), 0));
}

void guard_size(long long players, long long resources, long long cap,
                const char* stage) {
  if (players + resources > cap)
    throw TooLarge(std::string(stage) + " would exceed the vertex cap");
}

}  // namespace

Rat SantaInstance::value_of(int player, int resource) const {
  auto it = value.find({player, resource});
  return it == value.end() ? Rat(0) : it->second;
}

void validate_santa(const SantaInstance& s) {
  std::set<std::string> seen;
  for (const auto& id : s.players)
    if (!seen.insert(id).second) throw MalformedInstance("duplicate id: " + id);
  for (const auto& id : s.resources)
    if (!seen.insert(id).second) throw MalformedInstance("duplicate id: " + id);
  for (const auto& [pr, v] : s.value) {
    if (pr.first < 0 || pr.first >= s.num_players() || pr.second < 0 ||
        pr.second >= s.num_resources())
      throw MalformedInstance("value pair out of range");
    if (v < 0) throw MalformedInstance("negative value");
  }
}

Rat santa_player_value(const SantaInstance& s, const SantaAllocation& a, int player) {
  if (static_cast<int>(a.owner.size()) != s.num_resources())
    throw Error("allocation does not fit the instance");
  Rat total{0};
  for (int r = 0; r < s.num_resources(); ++r)
    if (a.owner[r] == player) total += s.value_of(player, r);
  return total;
}

Rat santa_min_value(const SantaInstance& s, const SantaAllocation& a) {
  Rat best{0};
  for (int p = 0; p < s.num_players(); ++p) {
    Rat v = santa_player_value(s, a, p);
    if (p == 0 || v < best) best = v;
  }
  return best;
}

std::pair<SantaInstance, CscSantaTrace> csc_to_santa(const Hypergraph& h) {
  validate(h);
  auto by_player = h.configs_by_player();
  for (int p = 0; p < h.num_players(); ++p)
    if (by_player[p].empty())
      throw MalformedInstance("player without a configuration: " + h.players[p]);

  SantaInstance s;
  CscSantaTrace tr;
  tr.orig_players = h.num_players();
  tr.orig_resources = h.num_resources();
  tr.orig_configs = h.num_configs();

  std::vector<int> first(h.num_players());  // first incidence of each player
  for (int p = 0; p < h.num_players(); ++p) {
    first[p] = static_cast<int>(tr.santa_player_of.size());
    for (int c : by_player[p]) {
      tr.santa_player_of.push_back({p, c});
      s.players.push_back("p_" + h.players[p] + "_C" + std::to_string(c));
    }
  }
  for (int r = 0; r < h.num_resources(); ++r) {
    s.resources.push_back("r_" + h.resources[r]);
    tr.santa_resource_of.push_back(r);
    tr.aux_owner.push_back(-1);
  }
  for (int p = 0; p < h.num_players(); ++p) {
    for (std::size_t i = 1; i < by_player[p].size(); ++i) {
      s.resources.push_back("aux_" + h.players[p] + "_" + std::to_string(i));
      tr.santa_resource_of.push_back(-1);
      tr.aux_owner.push_back(p);
    }
  }
  for (int sp = 0; sp < static_cast<int>(tr.santa_player_of.size()); ++sp) {
    auto [p, c] = tr.santa_player_of[sp];
    Rat unit = make_rat(1, h.configs[c].size());
    for (int u : h.configs[c].resources) s.value[{sp, u}] = unit;
    (void)p;
  }
  for (int r = h.num_resources(); r < static_cast<int>(s.resources.size()); ++r) {
    int p = tr.aux_owner[r];
    for (std::size_t i = 0; i < by_player[p].size(); ++i)
      s.value[{first[p] + static_cast<int>(i), r}] = 1;
  }
  validate_santa(s);
  return {std::move(s), std::move(tr)};
}

SantaAllocation santa_allocation_from_matching(const Hypergraph& h,
                                               const CscSantaTrace& trace,
                                               const RelaxedMatching& sol) {
  if (static_cast<int>(sol.entries.size()) != trace.orig_players)
    throw Error("matching does not fit the trace");
  auto by_player = h.configs_by_player();
  // incidence and per-player aux lookup, reconstructed from the trace
  std::map<std::pair<int, int>, int> incidence;
  for (int sp = 0; sp < static_cast<int>(trace.santa_player_of.size()); ++sp)
    incidence[trace.santa_player_of[sp]] = sp;
  std::vector<std::vector<int>> aux_of(trace.orig_players);
  for (int r = 0; r < static_cast<int>(trace.aux_owner.size()); ++r)
    if (trace.aux_owner[r] >= 0) aux_of[trace.aux_owner[r]].push_back(r);

  SantaAllocation a{std::vector<int>(trace.santa_resource_of.size(), -1)};
  for (int p = 0; p < trace.orig_players; ++p) {
    const auto& e = sol.entries[p];
    if (!e) throw Error("matching leaves a player uncovered");
    if (e->kept.empty()) throw Error("matching keeps nothing for a player");
    auto it = incidence.find({p, e->config});
    if (it == incidence.end()) throw Error("matched configuration is not an incidence");
    for (int u : e->kept) {
      if (u < 0 || u >= trace.orig_resources) throw Error("kept resource out of range");
      if (a.owner[u] != -1) throw Error("overlapping kept sets");
      a.owner[u] = it->second;
    }
    std::size_t next_aux = 0;
    for (int c : by_player[p]) {
      if (c == e->config) continue;
      a.owner[aux_of[p][next_aux++]] = incidence.at({p, c});
    }
  }
  return a;
}

RelaxedMatching santa_pullback(const CscSantaTrace& trace, const SantaAllocation& a) {
  if (a.owner.size() != trace.santa_resource_of.size())
    throw PullbackFailed("allocation does not fit the trace");
  std::vector<std::vector<int>> held(trace.santa_player_of.size());
  std::vector<char> has_aux(trace.santa_player_of.size(), 0);
  for (int r = 0; r < static_cast<int>(a.owner.size()); ++r) {
    int sp = a.owner[r];
    if (sp < 0) continue;
    if (sp >= static_cast<int>(trace.santa_player_of.size()))
      throw PullbackFailed("allocation names an unknown player");
    if (trace.santa_resource_of[r] >= 0)
      held[sp].push_back(trace.santa_resource_of[r]);
    else
      has_aux[sp] = 1;
  }
  RelaxedMatching out(trace.orig_players);
  for (int sp = 0; sp < static_cast<int>(trace.santa_player_of.size()); ++sp) {
    auto [p, c] = trace.santa_player_of[sp];
    if (has_aux[sp] || held[sp].empty() || out.entries[p]) continue;
    std::sort(held[sp].begin(), held[sp].end());
    out.entries[p] = MatchEntry{c, held[sp]};
  }
  for (int p = 0; p < trace.orig_players; ++p)
    if (!out.entries[p])
      throw PullbackFailed("every incidence of a player holds an aux resource or nothing");
  return out;
}

std::pair<Hypergraph, SantaCscTrace> santa_to_csc(const SantaInstance& s,
                                                  const Rat& opt_guess,
                                                  const ReduceParams& params) {
  validate_santa(s);
  if (opt_guess <= 0) throw BadGuess("optimum guess must be positive");
  if (params.max_vertices < 2) throw Error("max_vertices too small");

  SantaCscTrace tr;
  tr.original = s;
  tr.opt_guess = opt_guess;
  tr.two_n = 2 * std::max(1, s.num_resources());
  for (long long v = tr.two_n;;) {
    tr.chain.push_back(v);
    if (v <= 1) break;
    v = clog2(v);
  }
  tr.log_star = static_cast<int>(tr.chain.size()) - 1;

  // stage 1: normalize by the guess, round down to powers of two, drop the
  // dust below 1/two_n
  const long long jcap = clog2(tr.two_n) + 1;
  bool rounded_any = false;
  tr.stage1.players = s.players;
  tr.stage1.resources = s.resources;
  for (const auto& [pr, v] : s.value) {
    if (v == 0) continue;
    Rat scaled = v / opt_guess;
    Rat rounded;
    if (scaled >= 1) {
      rounded = Rat(1);
    } else {
      long long j = 1;
      while (j <= jcap && pow2r(-j) > scaled) ++j;
      rounded = pow2r(-j);
    }
    if (rounded != scaled) rounded_any = true;
    if (rounded * make_rat(tr.two_n) <= 1) {
      rounded_any = true;
      continue;
    }
    tr.stage1.value[pr] = rounded;
  }
  {
    std::vector<char> has(s.num_players(), 0);
    for (const auto& [pr, v] : tr.stage1.value) has[pr.first] = 1;
    for (int p = 0; p < s.num_players(); ++p)
      if (!has[p])
        throw BadGuess("no value survives rounding for player " + s.players[p]);
  }
  tr.loss_factors.push_back(rounded_any ? Rat(4) : Rat(1));

  // stage 2: split every player along the chain buckets; each bucket's aux
  // player takes that slice and shares a value-1 resource with the original
  const SantaInstance& s1 = tr.stage1;
  auto bucket_of = [&tr](long long j) -> int {
    long long twoj = 1LL << j;
    for (int k = 0; k < tr.log_star; ++k)
      if (tr.chain[k + 1] <= twoj && twoj < tr.chain[k]) return k;
    throw Error("value outside every bucket");
  };
  auto exp_of = [](const Rat& v) -> long long {
    auto j = neg_pow2_exp(v);
    if (!j) throw Error("non-dyadic value after rounding");
    return *j;
  };
  std::vector<std::set<int>> occupied(s1.num_players());
  for (const auto& [pr, v] : s1.value) occupied[pr.first].insert(bucket_of(exp_of(v)));

  SantaInstance s2;
  StageMap m2;
  std::vector<int> level2;  // -1 carried, else the aux player's bucket
  for (int p = 0; p < s1.num_players(); ++p) {
    s2.players.push_back(s1.players[p]);
    m2.player_to_prev.push_back(p);
    level2.push_back(-1);
  }
  std::vector<std::vector<int>> aux_of(s1.num_players());
  for (int p = 0; p < s1.num_players(); ++p)
    for (int k = 0; k < tr.log_star; ++k) {
      aux_of[p].push_back(static_cast<int>(s2.players.size()));
      s2.players.push_back(s1.players[p] + "~k" + std::to_string(k));
      m2.player_to_prev.push_back(p);
      level2.push_back(k);
    }
  for (int r = 0; r < s1.num_resources(); ++r) {
    s2.resources.push_back(s1.resources[r]);
    m2.res_to_prev.push_back(r);
  }
  std::vector<std::vector<int>> shared_of(s1.num_players());
  for (int p = 0; p < s1.num_players(); ++p)
    for (int k = 0; k < tr.log_star; ++k) {
      shared_of[p].push_back(static_cast<int>(s2.resources.size()));
      s2.resources.push_back(s1.players[p] + "~s" + std::to_string(k));
      m2.res_to_prev.push_back(-1);
    }
  guard_size(s2.num_players(), s2.num_resources(), params.max_vertices, "stage 2");
  for (const auto& [pr, v] : s1.value)
    s2.value[{aux_of[pr.first][bucket_of(exp_of(v))], pr.second}] = v;
  for (int p = 0; p < s1.num_players(); ++p)
    for (int k = 0; k < tr.log_star; ++k) {
      s2.value[{p, shared_of[p][k]}] = 1;
      s2.value[{aux_of[p][k], shared_of[p][k]}] = 1;
    }
  validate_santa(s2);
  bool split = false;
  for (const auto& occ : occupied) split = split || occ.size() > 1;
  tr.stage2 = std::move(s2);
  tr.map2 = std::move(m2);
  tr.loss_factors.push_back(split ? Rat(tr.log_star) : Rat(1));

  // stage 3: replace every sub-1 value by bundles: the player gets small
  // value-B tokens, each backed by an aux player that collects resources of
  // one particular value
  const SantaInstance& s2r = tr.stage2;
  const long long copies =
      params.bundle_copies > 0 ? params.bundle_copies : tr.two_n;
  std::vector<std::map<long long, std::vector<int>>> mids(s2r.num_players());
  for (const auto& [pr, v] : s2r.value)
    if (v < 1) mids[pr.first][exp_of(v)].push_back(pr.second);

  SantaInstance s3;
  StageMap m3;
  for (int p = 0; p < s2r.num_players(); ++p) {
    s3.players.push_back(s2r.players[p]);
    m3.player_to_prev.push_back(p);
  }
  for (int r = 0; r < s2r.num_resources(); ++r) {
    s3.resources.push_back(s2r.resources[r]);
    m3.res_to_prev.push_back(r);
  }
  for (const auto& [pr, v] : s2r.value)
    if (v == 1) s3.value[{pr.first, pr.second}] = 1;
  bool bundled = false;
  for (int p = 0; p < s2r.num_players(); ++p) {
    if (mids[p].empty()) continue;
    bundled = true;
    if (level2[p] < 0) throw Error("carried player holds a sub-1 value");
    long long e = clog2(tr.log_star * tr.chain[level2[p] + 1]);
    Rat bundle = pow2r(-e);
    for (const auto& [j, rs] : mids[p]) {
      Rat vb = (1 - j + e >= 0) ? Rat(1) : pow2r(1 - j + e);
      for (long long t = 1; t <= copies; ++t) {
        int bp = static_cast<int>(s3.players.size());
        s3.players.push_back(s2r.players[p] + "~b" + std::to_string(j) + "_" +
                             std::to_string(t));
        m3.player_to_prev.push_back(p);
        int w = static_cast<int>(s3.resources.size());
        s3.resources.push_back(s2r.players[p] + "~w" + std::to_string(j) + "_" +
                               std::to_string(t));
        m3.res_to_prev.push_back(-1);
        s3.value[{p, w}] = bundle;
        s3.value[{bp, w}] = 1;
        for (int r : rs) s3.value[{bp, r}] = vb;
      }
    }
  }
  guard_size(s3.num_players(), s3.num_resources(), params.max_vertices, "stage 3");
  validate_santa(s3);
  tr.stage3 = std::move(s3);
  tr.map3 = std::move(m3);
  tr.loss_factors.push_back(bundled ? Rat(2 * tr.log_star) : Rat(1));

  // stage 4: hypergraph encoding. Value-1 resources become singleton edges;
  // the sub-1 value of a player becomes one edge over fresh slot vertices
  // whose partners can fetch the valued resources instead.
  const SantaInstance& s3r = tr.stage3;
  std::vector<std::string> pv = s3r.players;
  std::vector<std::string> rv = s3r.resources;
  StageMap m4;
  for (int p = 0; p < s3r.num_players(); ++p) m4.player_to_prev.push_back(p);
  for (int r = 0; r < s3r.num_resources(); ++r) m4.res_to_prev.push_back(r);
  std::vector<std::vector<int>> ones(s3r.num_players());
  std::vector<std::vector<int>> mid_res(s3r.num_players());
  std::vector<Rat> mid_val(s3r.num_players(), Rat(0));
  for (const auto& [pr, v] : s3r.value) {
    if (v == 1) {
      ones[pr.first].push_back(pr.second);
    } else if (v > 0) {
      if (mid_val[pr.first] != 0 && mid_val[pr.first] != v)
        throw Error("player carries two distinct sub-1 values");
      mid_val[pr.first] = v;
      mid_res[pr.first].push_back(pr.second);
    }
  }
  std::vector<RawConfig> raw;
  for (int p = 0; p < s3r.num_players(); ++p) {
    for (int r : ones[p]) raw.push_back({s3r.players[p], {s3r.resources[r]}});
    if (mid_res[p].empty()) continue;
    auto e = neg_pow2_exp(mid_val[p]);
    if (!e || *e < 1) throw Error("bundle count is not a power of two");
    const long long q = 1LL << *e;
    std::vector<std::string> slots;
    for (long long t = 1; t <= q; ++t) {
      std::string qv = s3r.players[p] + "~q" + std::to_string(t);
      std::string yv = s3r.players[p] + "~y" + std::to_string(t);
      pv.push_back(qv);
      m4.player_to_prev.push_back(p);
      rv.push_back(yv);
      m4.res_to_prev.push_back(-1);
      slots.push_back(yv);
    }
    raw.push_back({s3r.players[p], slots});
    for (long long t = 1; t <= q; ++t) {
      std::string qv = s3r.players[p] + "~q" + std::to_string(t);
      raw.push_back({qv, {slots[static_cast<std::size_t>(t - 1)]}});
      for (int r : mid_res[p]) raw.push_back({qv, {s3r.resources[r]}});
    }
  }
  guard_size(static_cast<long long>(pv.size()), static_cast<long long>(rv.size()),
             params.max_vertices, "stage 4");
  tr.stage4 = make_hypergraph(std::move(pv), std::move(rv), raw);
  tr.map4 = std::move(m4);
  tr.loss_factors.push_back(Rat(1));

  Hypergraph out = tr.stage4;
  return {std::move(out), std::move(tr)};
}

PullbackReport csc_pullback(const SantaCscTrace& tr, const RelaxedMatching& sol) {
  const Hypergraph& h4 = tr.stage4;
  if (static_cast<int>(sol.entries.size()) != h4.num_players())
    throw PullbackFailed("solution does not fit the trace");

  PullbackReport rep;
  SantaAllocation a3{std::vector<int>(tr.stage3.num_resources(), -1)};
  for (int p = 0; p < h4.num_players(); ++p) {
    const auto& e = sol.entries[p];
    if (!e) continue;
    if (e->config < 0 || e->config >= h4.num_configs())
      throw PullbackFailed("configuration out of range");
    const Configuration& c = h4.configs[e->config];
    if (c.player != p) throw PullbackFailed("configuration belongs to another player");
    const int target = tr.map4.player_to_prev[p];
    for (int u : e->kept) {
      if (u < 0 || u >= h4.num_resources() || !c.contains(u))
        throw PullbackFailed("kept resource outside the configuration");
      int r3 = tr.map4.res_to_prev[u];
      if (r3 < 0) continue;  // slot vertices carry no value
      if (a3.owner[r3] != -1) throw PullbackFailed("resource routed twice");
      a3.owner[r3] = target;
    }
  }
  rep.stage_min.push_back(santa_min_value(tr.stage3, a3));

  SantaAllocation a2{std::vector<int>(tr.stage2.num_resources(), -1)};
  for (int r3 = 0; r3 < static_cast<int>(a3.owner.size()); ++r3) {
    if (a3.owner[r3] < 0) continue;
    int r2 = tr.map3.res_to_prev[r3];
    if (r2 >= 0) a2.owner[r2] = tr.map3.player_to_prev[a3.owner[r3]];
  }
  rep.stage_min.push_back(santa_min_value(tr.stage2, a2));

  SantaAllocation a1{std::vector<int>(tr.original.num_resources(), -1)};
  for (int r2 = 0; r2 < static_cast<int>(a2.owner.size()); ++r2) {
    if (a2.owner[r2] < 0) continue;
    int r1 = tr.map2.res_to_prev[r2];
    if (r1 >= 0) a1.owner[r1] = tr.map2.player_to_prev[a2.owner[r2]];
  }
  rep.alloc = std::move(a1);
  rep.min_value = santa_min_value(tr.original, rep.alloc);
  rep.stage_min.push_back(rep.min_value);
  rep.stage_factors = tr.loss_factors;
  rep.composed_loss = Rat(1);
  for (const Rat& f : tr.loss_factors) rep.composed_loss *= f;
  return rep;
}

RelaxedMatching approx_solve(const Hypergraph& h, std::uint64_t seed,
                             const PipelineParams& params) {
  SolveOutcome out = solve_pipeline(h, seed, params);
  if (out.infeasible) throw NoPerfectMatching("the cover relaxation is infeasible");
  if (!out.solved) throw Error("every solve attempt failed");
  return out.matching;
}

}  // namespace csc
