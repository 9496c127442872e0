#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "csc/errors.hpp"
#include "csc/hierarchy.hpp"
#include "csc/instances.hpp"
#include "csc/rng.hpp"
#include "csc/select.hpp"

using namespace csc;

namespace {

Hypergraph one_big_config(int size) {
  std::vector<std::string> res(size);
  for (int i = 0; i < size; ++i) res[i] = "r" + std::to_string(i);
  RawConfig raw{"p", res};
  return make_hypergraph({"p"}, res, {raw});
}

// m = 20 players, 4-regular, uniform size 256 = ell^4: every configuration
// is class 1, so each one carries events at levels 0 and 1.
Hypergraph desk_fixture() { return gen_uniform_regular(20, 4, 256, 3); }

}  // namespace

TEST_CASE("event thresholds split at six levels below the class") {
  Hypergraph h = one_big_config(512);
  SizeClassIndex idx = size_classes(h, 2);
  REQUIRE(idx.class_of[0] == 6);
  Hierarchy hier = sample_hierarchy(h, idx, 17);
  EventTable table = build_events(h, idx, hier, SelectParams{});
  REQUIRE(table.events.size() == 7);

  Rat ln2 = rat_ln(2, 32);
  const BadEvent& far = table.events[0];
  CHECK(far.h == 0);
  CHECK(far.cap == 512);
  CHECK(far.expectation == 0);  // no class-0 configurations exist
  CHECK(far.threshold == Rat(135) * 512 * ln2 / 2);
  CHECK(far.players.empty());

  for (int lev = 1; lev <= 6; ++lev) {
    const BadEvent& e = table.events[lev];
    CHECK(e.h == lev);
    CHECK(e.cap == and_count(table.masks[0], hier.level[lev]));
    if (e.cap == 0) continue;
    CHECK(e.threshold == e.expectation + Rat(63) * make_rat(e.cap) * ln2);
  }
  // The only class-6 configuration is the player's own, at degree 1.
  const BadEvent& top = table.events[6];
  if (top.cap > 0) {
    CHECK(top.expectation == make_rat(top.cap));
    CHECK(top.players == std::vector<int>{0});
  }
}

TEST_CASE("expectation weighs configurations by their owner's degree") {
  // p1 owns C0 = {r1,r2} and C1 = {r3}; p2 owns C2 = {r1,r3}. For the
  // event on C2 at level 0: 1/2 + 1/2 from p1's two configurations plus
  // 2 from C2 itself.
  Hypergraph h = make_hypergraph({"p1", "p2"}, {"r1", "r2", "r3"},
                                 {{"p1", {"r1", "r2"}},
                                  {"p1", {"r3"}},
                                  {"p2", {"r1", "r3"}}});
  SizeClassIndex idx = size_classes(h, 2);
  Hierarchy hier = sample_hierarchy(h, idx, 1);
  EventTable table = build_events(h, idx, hier, SelectParams{});

  const BadEvent& e = table.events[table.first_event[2]];
  CHECK(e.cap == 2);
  CHECK(e.expectation == 3);
  CHECK(e.players == std::vector<int>{0, 1});

  Selection sel{{0, 2}};
  std::vector<long long> obs = evaluate_events(h, idx, hier, table, sel);
  CHECK(obs[table.first_event[2]] == 3);  // |C0 cap C2| + |C2|
  sel.choice[0] = 1;
  obs = evaluate_events(h, idx, hier, table, sel);
  CHECK(obs[table.first_event[2]] == 3);  // |C1 cap C2| + |C2|

  CHECK_THROWS_AS(evaluate_events(h, idx, hier, table, Selection{{2, 0}}), Error);
  CHECK_THROWS_AS(evaluate_events(h, idx, hier, table, Selection{{0}}), Error);
}

TEST_CASE("generous thresholds admit the first draw") {
  // With 20 players each observation is at most 20 |C cap R_h|, far below
  // the 63 |C cap R_h| ln(4) deviation, so no event can ever fire here.
  Hypergraph h = desk_fixture();
  SizeClassIndex idx = size_classes(h, 4);
  Hierarchy hier = sample_hierarchy(h, idx, 7);
  SelectReport rep = select_configs(h, idx, hier, SelectParams{}, 11);
  CHECK(rep.converged);
  CHECK(rep.rounds == 0);
  CHECK(rep.score == 0);
  CHECK(rep.events == 2 * h.num_configs());

  auto own = h.configs_by_player();
  for (int i = 0; i < h.num_players(); ++i)
    CHECK(h.configs[rep.sel.choice[i]].player == i);

  SelectReport again = select_configs(h, idx, hier, SelectParams{}, 11);
  CHECK(again.sel.choice == rep.sel.choice);
}

TEST_CASE("zero deviation forces resampling until the budget runs out") {
  Hypergraph h = desk_fixture();
  SizeClassIndex idx = size_classes(h, 4);
  Hierarchy hier = sample_hierarchy(h, idx, 7);
  SelectParams params;
  params.dev_near = 0;
  params.dev_far = 0;
  params.max_rounds = 25;
  SelectReport rep = select_configs(h, idx, hier, params, 11);
  REQUIRE(!rep.converged);
  CHECK(rep.rounds == 25);
  CHECK(rep.score > 0);

  // The reported score belongs to the returned (best seen) selection.
  EventTable table = build_events(h, idx, hier, params);
  std::vector<long long> obs = evaluate_events(h, idx, hier, table, rep.sel);
  Rat score{0};
  for (std::size_t e = 0; e < table.events.size(); ++e) {
    if (obs[e] == 0 || make_rat(obs[e]) < table.events[e].threshold) continue;
    if (table.events[e].threshold > 0)
      score += make_rat(obs[e]) / table.events[e].threshold;
    else
      score += make_rat(obs[e]);
  }
  CHECK(score == rep.score);
}

TEST_CASE("crowding is repaired within the budget") {
  // Six players, each choosing between a copy of the shared pool S (size 8)
  // and a private set. The event on any copy of S sees 8a where a counts
  // pool choosers, against threshold 24 + dev 8 ln(2): with dev = 1 it
  // fires exactly when a >= 4, and resampling repairs that quickly.
  std::vector<std::string> players, resources;
  std::vector<RawConfig> raw;
  std::vector<std::string> pool;
  for (int r = 0; r < 8; ++r) {
    pool.push_back("s" + std::to_string(r));
    resources.push_back(pool.back());
  }
  for (int i = 0; i < 6; ++i) {
    players.push_back("p" + std::to_string(i));
    std::vector<std::string> priv;
    for (int r = 0; r < 8; ++r) {
      priv.push_back("b" + std::to_string(i) + "_" + std::to_string(r));
      resources.push_back(priv.back());
    }
    raw.push_back({players.back(), pool});
    raw.push_back({players.back(), priv});
  }
  Hypergraph h = make_hypergraph(players, resources, raw);
  SizeClassIndex idx = size_classes(h, 2);
  Hierarchy hier = sample_hierarchy(h, idx, 4);
  auto own = h.configs_by_player();

  SelectParams params;
  params.dev_near = 1;
  params.dev_far = 1;
  int repaired = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    SelectReport rep = select_configs(h, idx, hier, params, seed);
    REQUIRE(rep.converged);
    CHECK(rep.score == 0);
    if (rep.rounds > 0) ++repaired;
    int crowd = 0;
    for (int i = 0; i < 6; ++i)
      if (rep.sel.choice[i] == own[i][0]) ++crowd;
    CHECK(crowd <= 3);
  }
  CHECK(repaired > 0);
}

TEST_CASE("selection satisfies the aggregate coverage bounds") {
  Hypergraph h = desk_fixture();
  SizeClassIndex idx = size_classes(h, 4);
  Hierarchy hier = sample_hierarchy(h, idx, 7);
  SelectReport rep = select_configs(h, idx, hier, SelectParams{}, 11);
  REQUIRE(rep.converged);

  SelectionBoundReport all = check_selection_bound(h, idx, hier, rep.sel, Rat(1000));
  CHECK(all.ok);
  CHECK(all.checks == 2 * h.num_configs());
  CHECK(all.max_ratio < 1);

  SelectionBoundReport chosen = check_chosen_bound(h, idx, hier, rep.sel, Rat(2000));
  CHECK(chosen.ok);
  CHECK(chosen.checks == 2 * h.num_players());
  CHECK(chosen.max_ratio < 1);

  // coeff 0 leaves no slack at all, so every positive coverage fails.
  SelectionBoundReport none = check_chosen_bound(h, idx, hier, rep.sel, Rat(0));
  CHECK(!none.ok);
  REQUIRE(!none.failures.empty());
  for (const BoundFailure& f : none.failures) {
    CHECK(f.rhs == 0);
    CHECK(f.lhs > 0);
    CHECK(f.j >= 0);
    CHECK(f.j <= idx.class_of[f.config]);
  }
}

TEST_CASE("dependency sets stay within the degree bound") {
  Hypergraph h = desk_fixture();
  SizeClassIndex idx = size_classes(h, 4);
  Hierarchy hier = sample_hierarchy(h, idx, 7);
  EventTable table = build_events(h, idx, hier, SelectParams{});
  for (const BadEvent& e : table.events) {
    CHECK(static_cast<long long>(e.players.size()) <= 4 * e.cap);
    CHECK(std::is_sorted(e.players.begin(), e.players.end()));
    if (e.cap == 0) {
      CHECK(e.threshold == 0);
      CHECK(e.players.empty());
    }
  }

  BadEvent probe;
  probe.cap = 0;
  double w0 = lll_weight(probe, 4);
  CHECK(w0 == doctest::Approx(std::pow(4.0, -18.0)));
  probe.cap = 100000;
  CHECK(lll_weight(probe, 4) < w0);
}

TEST_CASE("players without configurations cannot select") {
  Hypergraph h = make_hypergraph({"p1", "p2"}, {"r1"}, {{"p1", {"r1"}}});
  SizeClassIndex idx = size_classes(h, 2);
  Hierarchy hier = sample_hierarchy(h, idx, 1);
  CHECK_THROWS_AS(select_configs(h, idx, hier, SelectParams{}, 1), Error);
}
