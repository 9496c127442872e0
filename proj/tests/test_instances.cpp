#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "csc/core.hpp"
#include "csc/errors.hpp"
#include "csc/instances.hpp"
#include "csc/io.hpp"

using namespace csc;

TEST_CASE("counterexample family has the pinned shape") {
  for (int k = 2; k <= 5; ++k) {
    CAPTURE(k);
    Hypergraph h = gen_counterexample(k);
    CHECK(h.num_players() == 1 + k * k);
    CHECK(h.num_resources() == k * (k + 1));
    CHECK(h.num_configs() == k + k * k * k);

    DegreeProfile prof = validate(h);
    CHECK(prof.is_regular);
    CHECK(prof.ell == k);
    // Hub configurations are the k disjoint private groups.
    for (int g = 0; g < k; ++g) {
      CHECK(h.configs[g].player == *h.player_index("hub"));
      CHECK(h.configs[g].size() == k);
    }
  }
  CHECK_THROWS_AS(gen_counterexample(1), Error);
}

TEST_CASE("counterexample witness achieves alpha = k") {
  for (int k = 2; k <= 6; ++k) {
    CAPTURE(k);
    Hypergraph h = gen_counterexample(k);
    RelaxedMatching sol = counterexample_witness(h, k);
    VerifyReport rep = verify(h, sol, Rat(k));
    CHECK(rep.violations.empty());
    REQUIRE(rep.alpha.has_value());
    CHECK(*rep.alpha == k);
    CHECK(rep.accepted);
  }
}

TEST_CASE("random regular generator respects its own contract") {
  Hypergraph h = gen_random_regular(5, 3, {1, 3}, 42);
  DegreeProfile prof = validate(h);
  CHECK(prof.is_regular);
  CHECK(prof.ell == 3);
  for (const auto& c : h.configs) {
    CHECK(c.size() >= 1);
    CHECK(c.size() <= 3);
  }
  // No resource was dropped twice: ids dense, all used.
  std::vector<int> deg(h.num_resources(), 0);
  for (const auto& c : h.configs)
    for (int r : c.resources) deg[r]++;
  for (int d : deg) CHECK(d >= 1);
}

TEST_CASE("generation is deterministic in the seed") {
  Hypergraph a = gen_random_regular(4, 2, {1, 2}, 7);
  Hypergraph b = gen_random_regular(4, 2, {1, 2}, 7);
  CHECK(instance_to_json(a).dump() == instance_to_json(b).dump());

  Hypergraph c = gen_random_regular(4, 2, {1, 2}, 8);
  CHECK(instance_to_json(a).dump() != instance_to_json(c).dump());
}

TEST_CASE("uniform generator emits fixed-size configurations") {
  Hypergraph h = gen_uniform_regular(2, 1, 1, 3);
  CHECK(h.num_players() == 2);
  CHECK(h.num_configs() == 2);
  CHECK(h.num_resources() == 2);  // singletons cannot share at ell = 1
  for (const auto& c : h.configs) CHECK(c.size() == 1);
  CHECK(validate(h).is_regular);

  Hypergraph big = gen_uniform_regular(6, 2, 3, 11);
  for (const auto& c : big.configs) CHECK(c.size() == 3);
  CHECK(validate(big).is_regular);
  CHECK(validate(big).ell == 2);
}

TEST_CASE("generator rejects bad parameters") {
  CHECK_THROWS_AS(gen_random_regular(0, 1, {1, 1}, 0), Error);
  CHECK_THROWS_AS(gen_random_regular(1, 0, {1, 1}, 0), Error);
  CHECK_THROWS_AS(gen_random_regular(1, 1, {0, 1}, 0), Error);
  CHECK_THROWS_AS(gen_random_regular(1, 1, {3, 2}, 0), Error);
}
