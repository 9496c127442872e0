#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "csc/core.hpp"
#include "csc/errors.hpp"
#include "csc/io.hpp"
#include "fixtures.hpp"

using namespace csc;

TEST_CASE("validate computes degrees and regularity") {
  Hypergraph h = fixtures::t0();
  DegreeProfile prof = validate(h);
  CHECK(prof.player_degree == std::vector<int>{1, 1});
  CHECK(prof.resource_degree == std::vector<int>{1, 1});
  CHECK(prof.is_regular);
  CHECK(prof.ell == 1);

  Hypergraph t1 = fixtures::t1();
  DegreeProfile p1 = validate(t1);
  CHECK(p1.player_degree == std::vector<int>{2, 2});
  CHECK(p1.resource_degree == std::vector<int>{2, 2, 2, 2});
  CHECK(p1.is_regular);
  CHECK(p1.ell == 2);
}

TEST_CASE("irregular instances are profiled but not regular") {
  Hypergraph h = make_hypergraph({"p1", "p2"}, {"r1", "r2"},
                                 {{"p1", {"r1"}}, {"p1", {"r2"}}, {"p2", {"r2"}}});
  DegreeProfile prof = validate(h);
  CHECK_FALSE(prof.is_regular);
  CHECK(prof.ell == 2);  // max degree witnesses the bound
}

TEST_CASE("regularity also requires the resource cap") {
  // Player degrees are all 1 but r1 sits in 2 configurations.
  Hypergraph h = make_hypergraph({"p1", "p2"}, {"r1"},
                                 {{"p1", {"r1"}}, {"p2", {"r1"}}});
  DegreeProfile prof = validate(h);
  CHECK_FALSE(prof.is_regular);
  CHECK(prof.ell == 2);
}

TEST_CASE("malformed instances are rejected") {
  CHECK_THROWS_AS(make_hypergraph({}, {"r"}, {}), MalformedInstance);
  CHECK_THROWS_AS(make_hypergraph({"p"}, {}, {}), MalformedInstance);
  CHECK_THROWS_AS(make_hypergraph({"p", "p"}, {"r"}, {}), MalformedInstance);
  CHECK_THROWS_AS(make_hypergraph({"p"}, {"r", "r"}, {}), MalformedInstance);
  // Same id on both sides of the bipartition.
  CHECK_THROWS_AS(make_hypergraph({"x"}, {"x"}, {}), MalformedInstance);
  // Unknown player / unknown resource.
  CHECK_THROWS_AS(make_hypergraph({"p"}, {"r"}, {{"q", {"r"}}}), MalformedInstance);
  CHECK_THROWS_AS(make_hypergraph({"p"}, {"r"}, {{"p", {"s"}}}), MalformedInstance);
  // A second player vertex inside the edge.
  CHECK_THROWS_AS(make_hypergraph({"p1", "p2"}, {"r"}, {{"p1", {"p2"}}}), MalformedInstance);
  // Repeated resource vertex and empty edge.
  CHECK_THROWS_AS(make_hypergraph({"p"}, {"r"}, {{"p", {"r", "r"}}}), MalformedInstance);
  CHECK_THROWS_AS(make_hypergraph({"p"}, {"r"}, {{"p", {}}}), MalformedInstance);
}

TEST_CASE("size classes follow the ell-power ladder") {
  CHECK(size_class_of(1, 10) == 0);
  CHECK(size_class_of(9999, 10) == 0);
  CHECK(size_class_of(10000, 10) == 1);
  CHECK(size_class_of(99999, 10) == 1);
  CHECK(size_class_of(100000, 10) == 2);

  CHECK(size_class_of(15, 2) == 0);
  CHECK(size_class_of(16, 2) == 1);
  CHECK(size_class_of(31, 2) == 1);
  CHECK(size_class_of(32, 2) == 2);

  CHECK_THROWS_AS(size_class_of(5, 1), Error);
  CHECK_THROWS_AS(size_class_of(0, 2), Error);
}

TEST_CASE("size_classes partitions configs and reports depth") {
  // One tiny and one size-100000 config: classes 0 and 2, so depth 3.
  std::vector<std::string> rs;
  for (int i = 0; i < 100000; ++i) rs.push_back("r" + std::to_string(i));
  std::vector<RawConfig> cfg;
  cfg.push_back({"p1", {"r0"}});
  RawConfig big;
  big.player = "p2";
  big.resources = rs;
  cfg.push_back(big);
  Hypergraph h = make_hypergraph({"p1", "p2"}, std::move(rs), cfg);

  SizeClassIndex idx = size_classes(h, 10);
  CHECK(idx.depth == 3);
  CHECK(idx.class_of == std::vector<int>{0, 2});
  CHECK(idx.klass[0] == std::vector<int>{0});
  CHECK(idx.klass[1].empty());
  CHECK(idx.klass[2] == std::vector<int>{1});

  CHECK_THROWS_AS(size_classes(h, 1), Error);
}

TEST_CASE("depth stays within the logarithmic bound") {
  // Sizes <= n force ell^(depth+2) <= n for depth >= 1.
  for (long long ell : {2, 3, 10}) {
    std::vector<std::string> rs;
    for (int i = 0; i < 300; ++i) rs.push_back("r" + std::to_string(i));
    std::vector<RawConfig> cfg;
    for (int s : {1, 7, 33, 120, 300}) {
      RawConfig rc;
      rc.player = "p";
      for (int i = 0; i < s; ++i) rc.resources.push_back(rs[i]);
      cfg.push_back(std::move(rc));
    }
    Hypergraph h = make_hypergraph({"p"}, std::move(rs), cfg);
    SizeClassIndex idx = size_classes(h, ell);
    if (idx.depth >= 2) {
      long long pow = 1;
      for (int i = 0; i < idx.depth + 2; ++i) pow *= ell;
      CHECK(pow <= h.num_resources());
    }
  }
}

TEST_CASE("verify accepts the documented relaxed matching of the overlap fixture") {
  Hypergraph h = fixtures::t1();
  RelaxedMatching sol(2);
  sol.entries[0] = MatchEntry{0, {*h.resource_index("r1")}};
  sol.entries[1] = MatchEntry{3, {*h.resource_index("r4")}};

  VerifyReport at2 = verify(h, sol, Rat(2));
  CHECK(at2.violations.empty());
  REQUIRE(at2.alpha.has_value());
  CHECK(*at2.alpha == 2);
  CHECK(at2.accepted);

  VerifyReport at32 = verify(h, sol, Rat(3, 2));
  CHECK_FALSE(at32.accepted);
  CHECK(at32.violations.empty());  // rejection is purely the alpha bound
}

TEST_CASE("verify flags each violation kind") {
  Hypergraph h = fixtures::t1();

  RelaxedMatching uncovered(2);
  uncovered.entries[0] = MatchEntry{0, {0}};
  VerifyReport r1 = verify(h, uncovered, Rat(2));
  REQUIRE(r1.violations.size() == 1);
  CHECK(r1.violations[0].kind == Violation::PlayerUncovered);
  CHECK_FALSE(r1.accepted);

  RelaxedMatching overlap(2);
  overlap.entries[0] = MatchEntry{0, {0}};      // p1 keeps r1
  overlap.entries[1] = MatchEntry{2, {0}};      // p2 also keeps r1
  VerifyReport r2 = verify(h, overlap, Rat(2));
  REQUIRE(r2.violations.size() == 1);
  CHECK(r2.violations[0].kind == Violation::Overlap);

  RelaxedMatching outside(2);
  outside.entries[0] = MatchEntry{0, {2}};      // r3 is not in C0
  outside.entries[1] = MatchEntry{3, {3}};
  VerifyReport r3 = verify(h, outside, Rat(2));
  REQUIRE(r3.violations.size() == 1);
  CHECK(r3.violations[0].kind == Violation::KeptNotSubset);

  RelaxedMatching empty(2);
  empty.entries[0] = MatchEntry{0, {}};
  empty.entries[1] = MatchEntry{3, {3}};
  VerifyReport r4 = verify(h, empty, Rat(2));
  REQUIRE(r4.violations.size() == 1);
  CHECK(r4.violations[0].kind == Violation::KeptEmpty);

  RelaxedMatching foreign(2);
  foreign.entries[0] = MatchEntry{2, {0}};      // C2 belongs to p2
  foreign.entries[1] = MatchEntry{3, {3}};
  VerifyReport r5 = verify(h, foreign, Rat(2));
  CHECK_FALSE(r5.accepted);
  bool saw_wrong_player = false;
  for (const auto& v : r5.violations) saw_wrong_player |= v.kind == Violation::WrongPlayer;
  CHECK(saw_wrong_player);
}

TEST_CASE("verify throws on structurally broken solutions") {
  Hypergraph h = fixtures::t1();
  CHECK_THROWS_AS(verify(h, RelaxedMatching(1), Rat(2)), MalformedSolution);

  RelaxedMatching bad_cfg(2);
  bad_cfg.entries[0] = MatchEntry{99, {0}};
  bad_cfg.entries[1] = MatchEntry{3, {3}};
  CHECK_THROWS_AS(verify(h, bad_cfg, Rat(2)), MalformedSolution);

  RelaxedMatching bad_res(2);
  bad_res.entries[0] = MatchEntry{0, {42}};
  bad_res.entries[1] = MatchEntry{3, {3}};
  CHECK_THROWS_AS(verify(h, bad_res, Rat(2)), MalformedSolution);

  RelaxedMatching repeated(2);
  repeated.entries[0] = MatchEntry{0, {0, 0}};
  repeated.entries[1] = MatchEntry{3, {3}};
  CHECK_THROWS_AS(verify(h, repeated, Rat(2)), MalformedSolution);
}

TEST_CASE("achieved alpha is the worst keep ratio") {
  Hypergraph h = fixtures::t1();
  RelaxedMatching sol(2);
  sol.entries[0] = MatchEntry{0, {0, 1}};  // keeps both: ratio 1
  sol.entries[1] = MatchEntry{2, {2}};     // keeps one of two: ratio 2
  auto a = achieved_alpha(h, sol);
  REQUIRE(a.has_value());
  CHECK(*a == 2);

  RelaxedMatching hole(2);
  hole.entries[0] = MatchEntry{0, {0}};
  CHECK_FALSE(achieved_alpha(h, hole).has_value());

  RelaxedMatching nothing(2);
  nothing.entries[0] = MatchEntry{0, {}};
  nothing.entries[1] = MatchEntry{3, {3}};
  CHECK_FALSE(achieved_alpha(h, nothing).has_value());
}

TEST_CASE("verify verdict survives relabeling") {
  Hypergraph h = fixtures::t1();
  RelaxedMatching sol(2);
  sol.entries[0] = MatchEntry{0, {0}};
  sol.entries[1] = MatchEntry{3, {3}};
  VerifyReport base = verify(h, sol, Rat(2));

  Hypergraph renamed = h;
  renamed.players = {"alice", "bob"};
  renamed.resources = {"w", "x", "y", "z"};
  VerifyReport rep = verify(renamed, sol, Rat(2));
  CHECK(rep.accepted == base.accepted);
  REQUIRE(rep.alpha.has_value());
  CHECK(*rep.alpha == *base.alpha);
}

TEST_CASE("instance json round-trips") {
  Hypergraph h = fixtures::t1();
  Json j = instance_to_json(h);
  Hypergraph back = instance_from_json(j);
  CHECK(back.players == h.players);
  CHECK(back.resources == h.resources);
  REQUIRE(back.num_configs() == h.num_configs());
  for (int c = 0; c < h.num_configs(); ++c) {
    CHECK(back.configs[c].player == h.configs[c].player);
    CHECK(back.configs[c].resources == h.configs[c].resources);
  }
  // Serialization is canonical, so a round-trip is byte-stable.
  CHECK(instance_to_json(back).dump(2) == j.dump(2));
}

TEST_CASE("solution json round-trips") {
  Hypergraph h = fixtures::t1();
  RelaxedMatching sol(2);
  sol.entries[0] = MatchEntry{0, {0}};
  sol.entries[1] = MatchEntry{3, {3}};
  Json j = solution_to_json(h, sol);
  RelaxedMatching back = solution_from_json(h, j);
  REQUIRE(back.entries[0].has_value());
  CHECK(back.entries[0]->config == 0);
  CHECK(back.entries[0]->kept == std::vector<int>{0});
  CHECK(back.entries[1]->config == 3);

  Json broken = j;
  broken["entries"][0]["config"] = 17;
  CHECK_THROWS_AS(solution_from_json(h, broken), MalformedSolution);
  Json dup = j;
  dup["entries"].push_back(j["entries"][0]);
  CHECK_THROWS_AS(solution_from_json(h, dup), MalformedSolution);
}

TEST_CASE("rational parsing") {
  CHECK(*rat_parse("7") == 7);
  CHECK(*rat_parse("3/2") == Rat(3, 2));
  CHECK(*rat_parse("0.25") == Rat(1, 4));
  CHECK(*rat_parse("2/4") == Rat(1, 2));
  CHECK_FALSE(rat_parse("").has_value());
  CHECK_FALSE(rat_parse("x").has_value());
  CHECK_FALSE(rat_parse("1/").has_value());
  CHECK(rat_str(Rat(3, 2)) == "3/2");
  CHECK(rat_str(Rat(4, 2)) == "2");
}
