#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "csc/core.hpp"
#include "csc/errors.hpp"
#include "csc/instances.hpp"
#include "csc/oracle.hpp"
#include "fixtures.hpp"

using namespace csc;

namespace {

// Independent reference: enumerate every selection and every combination of
// nonempty kept subsets, checking disjointness directly. Exponential, only
// for the tiniest fixtures, and deliberately free of flow machinery.
MaybeAlpha subset_enumeration_alpha(const Hypergraph& h) {
  auto by_player = h.configs_by_player();
  const int m = h.num_players();
  for (const auto& list : by_player)
    if (list.empty()) return std::nullopt;

  MaybeAlpha best;
  std::vector<std::size_t> pick(m, 0);
  while (true) {
    std::vector<int> chosen(m);
    for (int p = 0; p < m; ++p) chosen[p] = by_player[p][pick[p]];

    // Kept subsets as bit masks over each config's resource list.
    std::vector<unsigned> mask(m, 1);
    bool more_masks = true;
    while (more_masks) {
      bool disjoint = true;
      std::set<int> used;
      Rat worst(0);
      for (int p = 0; p < m && disjoint; ++p) {
        const auto& res = h.configs[chosen[p]].resources;
        int count = 0;
        for (std::size_t b = 0; b < res.size(); ++b)
          if (mask[p] >> b & 1) {
            ++count;
            if (!used.insert(res[b]).second) disjoint = false;
          }
        if (count == 0) disjoint = false;
        if (disjoint) {
          Rat ratio(static_cast<int>(res.size()), count);
          ratio.canonicalize();
          if (ratio > worst) worst = ratio;
        }
      }
      if (disjoint && (!best || worst < *best)) best = worst;

      int p = m - 1;
      while (p >= 0) {
        unsigned full = (1u << h.configs[chosen[p]].size()) - 1;
        if (mask[p] < full) {
          ++mask[p];
          break;
        }
        mask[p--] = 1;
      }
      more_masks = p >= 0;
    }

    int p = m - 1;
    while (p >= 0 && ++pick[p] == by_player[p].size()) pick[p--] = 0;
    if (p < 0) break;
  }
  return best;
}

}  // namespace

TEST_CASE("disjoint singletons give alpha 1") {
  Hypergraph h = fixtures::t0();
  OracleResult res = brute_force_min_alpha(h);
  REQUIRE(res.alpha.has_value());
  CHECK(*res.alpha == 1);
  CHECK(res.selections_tried >= 1);
  VerifyReport rep = verify(h, res.witness, *res.alpha);
  CHECK(rep.accepted);
}

TEST_CASE("the overlap fixture needs alpha 2") {
  Hypergraph h = fixtures::t1();
  OracleResult res = brute_force_min_alpha(h);
  REQUIRE(res.alpha.has_value());
  CHECK(*res.alpha == 2);
  CHECK(verify(h, res.witness, Rat(2)).accepted);

  // Cross-check against the subset-enumeration reference.
  MaybeAlpha ref = subset_enumeration_alpha(h);
  REQUIRE(ref.has_value());
  CHECK(*ref == 2);
}

TEST_CASE("per-selection optimum on the overlap fixture") {
  Hypergraph h = fixtures::t1();
  for (int c1 : {0, 1})
    for (int c2 : {2, 3}) {
      CAPTURE(c1);
      CAPTURE(c2);
      MaybeAlpha a = min_alpha_for_selection(h, {c1, c2});
      REQUIRE(a.has_value());
      CHECK(*a == 2);
    }
}

TEST_CASE("selection_beats is a strict-improvement test") {
  Hypergraph h = fixtures::t1();
  CHECK_FALSE(selection_beats(h, {0, 2}, Rat(2)));
  CHECK(selection_beats(h, {0, 2}, Rat(3)));
  CHECK(selection_beats(h, {0, 2}, Rat(5, 2)));
  CHECK_FALSE(selection_beats(h, {0, 2}, Rat(1)));
}

TEST_CASE("an unsatisfiable selection has no finite alpha") {
  Hypergraph h = make_hypergraph({"p1", "p2"}, {"r"},
                                 {{"p1", {"r"}}, {"p2", {"r"}}});
  CHECK_FALSE(min_alpha_for_selection(h, {0, 1}).has_value());
  OracleResult res = brute_force_min_alpha(h);
  CHECK_FALSE(res.alpha.has_value());
}

TEST_CASE("a player without configurations leaves alpha infinite") {
  Hypergraph h = make_hypergraph({"p1", "p2"}, {"r1"}, {{"p1", {"r1"}}});
  OracleResult res = brute_force_min_alpha(h);
  CHECK_FALSE(res.alpha.has_value());
  CHECK(res.selections_tried == 0);
}

TEST_CASE("oracle confirms the counterexample bound for small k") {
  for (int k : {2, 3}) {
    CAPTURE(k);
    Hypergraph h = gen_counterexample(k);
    OracleResult res = brute_force_min_alpha(h, {.max_selections = 100000});
    REQUIRE(res.alpha.has_value());
    CHECK(*res.alpha == k);
    CHECK(verify(h, res.witness, Rat(k)).accepted);
  }
}

TEST_CASE("the enumeration cap triggers TooLarge") {
  Hypergraph h = fixtures::t1();
  CHECK_THROWS_AS(brute_force_min_alpha(h, {.max_selections = 3}), TooLarge);
}

TEST_CASE("flow-based and subset-enumeration oracles agree on random instances") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    CAPTURE(seed);
    Hypergraph h = gen_random_regular(3, 2, {1, 2}, seed);
    OracleResult res = brute_force_min_alpha(h);
    MaybeAlpha ref = subset_enumeration_alpha(h);
    REQUIRE(res.alpha.has_value() == ref.has_value());
    if (ref) {
      CHECK(*res.alpha == *ref);
      CHECK(verify(h, res.witness, *res.alpha).accepted);
    }
  }
}
