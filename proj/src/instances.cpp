#include "csc/instances.hpp"

#include <algorithm>
#include <string>

#include "csc/errors.hpp"
#include "csc/rng.hpp"

namespace csc {

Hypergraph gen_counterexample(int k) {
  if (k < 2) throw Error("gen_counterexample: k must be >= 2");

  std::vector<std::string> players{"hub"};
  std::vector<std::string> resources;
  for (int g = 0; g < k; ++g)
    for (int j = 0; j < k; ++j) players.push_back("g" + std::to_string(g) + "_p" + std::to_string(j));
  for (int g = 0; g < k; ++g) {
    for (int j = 0; j < k; ++j)
      resources.push_back("g" + std::to_string(g) + "_r" + std::to_string(j));
    resources.push_back("g" + std::to_string(g) + "_shared");
  }

  std::vector<RawConfig> cfg;
  // Hub: one configuration per group, holding that group's private resources.
  for (int g = 0; g < k; ++g) {
    RawConfig rc;
    rc.player = "hub";
    for (int j = 0; j < k; ++j)
      rc.resources.push_back("g" + std::to_string(g) + "_r" + std::to_string(j));
    cfg.push_back(std::move(rc));
  }
  // Group player j: (k-1) parallel singleton edges to its private resource,
  // one singleton edge to the group's shared resource.
  for (int g = 0; g < k; ++g)
    for (int j = 0; j < k; ++j) {
      std::string p = "g" + std::to_string(g) + "_p" + std::to_string(j);
      for (int copy = 0; copy < k - 1; ++copy)
        cfg.push_back({p, {"g" + std::to_string(g) + "_r" + std::to_string(j)}});
      cfg.push_back({p, {"g" + std::to_string(g) + "_shared"}});
    }
  return make_hypergraph(std::move(players), std::move(resources), cfg);
}

RelaxedMatching counterexample_witness(const Hypergraph& h, int k) {
  RelaxedMatching sol(h.players.size());
  // Hub uses its group-0 configuration and keeps one private resource.
  MatchEntry hub;
  hub.config = 0;
  hub.kept = {*h.resource_index("g0_r0")};
  sol.entries[*h.player_index("hub")] = std::move(hub);

  for (int g = 0; g < k; ++g)
    for (int j = 0; j < k; ++j) {
      int p = *h.player_index("g" + std::to_string(g) + "_p" + std::to_string(j));
      // Configurations of this player sit in a contiguous block after the
      // k hub edges: k - 1 private copies, then the shared edge.
      int base = k + (g * k + j) * k;
      MatchEntry e;
      if (g == 0 && j == 0) {
        e.config = base + k - 1;  // hub took r0: move to the shared resource
        e.kept = {*h.resource_index("g0_shared")};
      } else {
        e.config = base;
        e.kept = {*h.resource_index("g" + std::to_string(g) + "_r" + std::to_string(j))};
      }
      sol.entries[p] = std::move(e);
    }
  return sol;
}

Hypergraph gen_random_regular(int m, int ell, SizeRange sizes, std::uint64_t seed) {
  if (m < 1 || ell < 1) throw Error("gen_random_regular: m and ell must be >= 1");
  if (sizes.lo < 1 || sizes.lo > sizes.hi) throw Error("gen_random_regular: bad size range");

  // Pool with ~20% slack over the expected demand of m * avg size resources
  // (m * ell * avg slots at cap ell each); tight pools make the degree cap
  // hard to respect and trip the retry budget.
  const long long avg2 = sizes.lo + sizes.hi;
  long long pool = std::max<long long>(sizes.hi, (3LL * m * avg2 + 4) / 5);
  Rng rng(substream(seed, "instances"));

  const int attempts = 1000;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<int> cap(pool, ell);
    std::vector<Configuration> cfgs;
    bool ok = true;
    for (int p = 0; ok && p < m; ++p)
      for (int c = 0; ok && c < ell; ++c) {
        int size = sizes.lo + static_cast<int>(rng.below(sizes.hi - sizes.lo + 1));
        std::vector<int> avail;
        for (long long r = 0; r < pool; ++r)
          if (cap[r] > 0) avail.push_back(static_cast<int>(r));
        if (static_cast<int>(avail.size()) < size) {
          ok = false;
          break;
        }
        // Partial Fisher-Yates: first `size` entries become the draw.
        for (int i = 0; i < size; ++i) {
          std::size_t j = i + rng.index(avail.size() - i);
          std::swap(avail[i], avail[j]);
        }
        Configuration cfg;
        cfg.player = p;
        cfg.resources.assign(avail.begin(), avail.begin() + size);
        std::sort(cfg.resources.begin(), cfg.resources.end());
        for (int r : cfg.resources) cap[r]--;
        cfgs.push_back(std::move(cfg));
      }
    if (!ok) continue;

    // Drop resources no configuration uses and renumber densely.
    std::vector<int> remap(pool, -1);
    int n = 0;
    for (const auto& cfg : cfgs)
      for (int r : cfg.resources)
        if (remap[r] < 0) remap[r] = n++;
    Hypergraph h;
    for (int p = 0; p < m; ++p) h.players.push_back("p" + std::to_string(p));
    h.resources.resize(n);
    for (long long r = 0; r < pool; ++r)
      if (remap[r] >= 0) h.resources[remap[r]] = "r" + std::to_string(remap[r]);
    for (auto& cfg : cfgs) {
      for (int& r : cfg.resources) r = remap[r];
      std::sort(cfg.resources.begin(), cfg.resources.end());
    }
    h.configs = std::move(cfgs);
    return h;
  }
  throw GenerationFailed("gen_random_regular: budget of " + std::to_string(attempts) +
                         " attempts exhausted");
}

Hypergraph gen_uniform_regular(int m, int ell, int size, std::uint64_t seed) {
  return gen_random_regular(m, ell, SizeRange{size, size}, seed);
}

}  // namespace csc
