#include "csc/hierarchy.hpp"

#include "csc/errors.hpp"
#include "csc/rng.hpp"

namespace csc {

Hierarchy sample_hierarchy(const Hypergraph& h, const SizeClassIndex& idx,
                           std::uint64_t seed) {
  if (idx.ell < 2) throw Error("sample_hierarchy: ell must be >= 2");
  Hierarchy hier;
  hier.ell = idx.ell;
  hier.seed = seed;

  const int n = h.num_resources();
  Bits all(n);
  for (int r = 0; r < n; ++r) all.set(r);
  hier.level.push_back(all);
  hier.size.push_back(n);

  Rng rng(seed);
  for (int k = 1; k <= idx.depth; ++k) {
    Bits next(n);
    long long cnt = 0;
    const Bits& prev = hier.level[k - 1];
    // Survival with probability exactly 1/ell, resource order fixed.
    for (int r = 0; r < n; ++r)
      if (prev.test(r) && rng.chance(1, static_cast<std::uint64_t>(hier.ell))) {
        next.set(r);
        ++cnt;
      }
    hier.level.push_back(std::move(next));
    hier.size.push_back(cnt);
  }
  return hier;
}

SizeBoundReport check_size_bounds(const Hypergraph& h, const SizeClassIndex& idx,
                                  const Hierarchy& hier, const Rat& slack_lo,
                                  const Rat& slack_hi) {
  SizeBoundReport rep;
  rep.slack_lo = slack_lo;
  rep.slack_hi = slack_hi;
  auto masks = config_masks(h);

  for (int k = 0; k <= hier.depth(); ++k) {
    mpz_class lk;
    mpz_ui_pow_ui(lk.get_mpz_t(), static_cast<unsigned long>(hier.ell),
                  static_cast<unsigned long>(k));
    for (int c = 0; c < h.num_configs(); ++c) {
      if (idx.class_of[c] < k) continue;
      ++rep.checks;
      long long obs = and_count(masks[c], hier.level[k]);
      // The window is slack * ell^-k * |C|; compare with obs * ell^k.
      Rat scaled = make_rat(obs) * Rat(lk);
      Rat size(h.configs[c].size());
      if (scaled < slack_lo * size || scaled > slack_hi * size) {
        LevelFailure f;
        f.config = c;
        f.k = k;
        f.observed = obs;
        f.bound_lo = slack_lo * size / Rat(lk);
        f.bound_hi = slack_hi * size / Rat(lk);
        rep.failures.push_back(std::move(f));
      }
    }
  }
  rep.ok = rep.failures.empty();
  return rep;
}

OverlapBoundReport check_overlap_bounds(const Hypergraph& h, const SizeClassIndex& idx,
                                        const Hierarchy& hier) {
  OverlapBoundReport rep;
  auto masks = config_masks(h);

  for (int k = 0; k <= hier.depth(); ++k) {
    mpz_class lk;
    mpz_ui_pow_ui(lk.get_mpz_t(), static_cast<unsigned long>(hier.ell),
                  static_cast<unsigned long>(k));
    if (k >= static_cast<int>(idx.klass.size())) continue;
    const std::vector<int>& klass = idx.klass[k];
    if (klass.empty()) continue;
    for (int c = 0; c < h.num_configs(); ++c) {
      if (idx.class_of[c] < k) continue;
      ++rep.checks;
      long long lhs = 0, overlap = 0;
      for (int other : klass) {
        lhs += and_count(masks[other], masks[c], hier.level[k]);
        overlap += and_count(masks[other], masks[c]);
      }
      // lhs <= (10 / ell^k) (|C| + overlap), scaled by ell^k.
      Rat scaled = make_rat(lhs) * Rat(lk);
      Rat rhs = Rat(10) * make_rat(h.configs[c].size() + overlap);
      if (scaled > rhs) {
        LevelFailure f;
        f.config = c;
        f.k = k;
        f.observed = lhs;
        f.bound_hi = rhs / Rat(lk);
        rep.failures.push_back(std::move(f));
      }
    }
  }
  rep.ok = rep.failures.empty();
  return rep;
}

CertifiedHierarchy sample_certified(const Hypergraph& h, const SizeClassIndex& idx,
                                    std::uint64_t seed, int retries,
                                    const Rat& slack_lo, const Rat& slack_hi) {
  CertifiedHierarchy best;
  std::size_t best_failures = 0;
  int used = 0;
  for (int attempt = 0; attempt < retries; ++attempt) {
    used = attempt + 1;
    CertifiedHierarchy cur;
    cur.hier = sample_hierarchy(h, idx, substream(seed, "hierarchy", attempt));
    cur.size_report = check_size_bounds(h, idx, cur.hier, slack_lo, slack_hi);
    cur.overlap_report = check_overlap_bounds(h, idx, cur.hier);
    cur.certified = cur.size_report.ok && cur.overlap_report.ok;
    std::size_t failures =
        cur.size_report.failures.size() + cur.overlap_report.failures.size();
    if (attempt == 0 || failures < best_failures) {
      best = std::move(cur);
      best_failures = failures;
    }
    if (best.certified) break;
  }
  best.attempts = used;
  return best;
}

}  // namespace csc
