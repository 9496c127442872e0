#pragma once

#include <cstdint>

#include "csc/core.hpp"

namespace csc {

/// Hard instance family parameterized by k >= 2: one hub player with k
/// disjoint k-resource configurations, and k groups of k players that pin
/// the hub down. Every relaxed matching needs alpha >= k, and alpha = k is
/// achievable; the instance is k-regular with (1 + k^2) players and
/// k(k + 1) resources.
Hypergraph gen_counterexample(int k);

/// The alpha = k witness that gen_counterexample(k) admits (hub keeps one
/// resource of group 0, the owner of that resource moves to the shared
/// resource). Useful for tests at scales where brute force is out of reach.
RelaxedMatching counterexample_witness(const Hypergraph& h, int k);

struct SizeRange {
  int lo = 1;
  int hi = 1;
};

/// Random ell-regular instance: m players, ell configurations each, sizes
/// uniform in [sizes.lo, sizes.hi], every resource in at most ell
/// configurations. Resources left unused by the draw are dropped. Same
/// arguments and seed give a byte-identical instance; throws
/// GenerationFailed when the retry budget (1000 whole-instance attempts,
/// i.e. 1000 * m * ell configuration draws) is exhausted.
Hypergraph gen_random_regular(int m, int ell, SizeRange sizes, std::uint64_t seed);

/// gen_random_regular with a single size.
Hypergraph gen_uniform_regular(int m, int ell, int size, std::uint64_t seed);

}  // namespace csc
