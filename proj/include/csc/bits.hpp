#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "csc/core.hpp"

namespace csc {

/// Fixed-width bitset over resource indices. Intersection cardinalities
/// dominate the level checks, so they run on 64-bit words.
struct Bits {
  std::vector<std::uint64_t> w;

  Bits() = default;
  explicit Bits(int n) : w((n + 63) / 64, 0) {}

  void set(int i) { w[i >> 6] |= 1ULL << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(1ULL << (i & 63)); }
  bool test(int i) const { return w[i >> 6] >> (i & 63) & 1; }

  long long count() const {
    long long c = 0;
    for (std::uint64_t v : w) c += std::popcount(v);
    return c;
  }
};

inline long long and_count(const Bits& a, const Bits& b) {
  long long c = 0;
  std::size_t k = a.w.size() < b.w.size() ? a.w.size() : b.w.size();
  for (std::size_t i = 0; i < k; ++i) c += std::popcount(a.w[i] & b.w[i]);
  return c;
}

inline long long and_count(const Bits& a, const Bits& b, const Bits& c) {
  long long n = 0;
  std::size_t k = std::min(a.w.size(), std::min(b.w.size(), c.w.size()));
  for (std::size_t i = 0; i < k; ++i) n += std::popcount(a.w[i] & b.w[i] & c.w[i]);
  return n;
}

/// One mask per configuration, over the instance's resource indices.
inline std::vector<Bits> config_masks(const Hypergraph& h) {
  std::vector<Bits> masks;
  masks.reserve(h.configs.size());
  for (const Configuration& c : h.configs) {
    Bits b(h.num_resources());
    for (int r : c.resources) b.set(r);
    masks.push_back(std::move(b));
  }
  return masks;
}

}  // namespace csc
