#include "csc/preprocess.hpp"

#include <algorithm>

#include "csc/errors.hpp"
#include "csc/flow.hpp"
#include "csc/rng.hpp"

namespace csc {

DuplicateResult duplicate_to_regular(const Hypergraph& h, const std::vector<Rat>& x,
                                     long long blowup_cap) {
  if (static_cast<int>(x.size()) != h.num_configs())
    throw Error("duplicate_to_regular: x must assign every configuration");

  std::vector<Rat> xs = x;
  mpz_class T = 1;
  for (auto& v : xs) {
    v.canonicalize();
    if (v < 0 || v > 1) throw Error("duplicate_to_regular: x outside [0, 1]");
    mpz_lcm(T.get_mpz_t(), T.get_mpz_t(), v.get_den_mpz_t());
  }
  // Player constraints must be tight: the duplicated degree is exactly T.
  std::vector<Rat> cover(h.num_players(), Rat(0));
  for (int c = 0; c < h.num_configs(); ++c) cover[h.configs[c].player] += xs[c];
  for (int i = 0; i < h.num_players(); ++i)
    if (cover[i] != 1)
      throw Error("duplicate_to_regular: player " + h.players[i] + " not exactly covered");

  if (!T.fits_slong_p() || T.get_si() > blowup_cap)
    throw BlowupExceeded("duplication factor " + T.get_str() + " exceeds cap " +
                         std::to_string(blowup_cap));

  DuplicateResult res;
  res.T = T.get_si();
  res.out.players = h.players;
  res.out.resources = h.resources;
  for (int c = 0; c < h.num_configs(); ++c) {
    mpz_class copies = xs[c].get_num() * (T / xs[c].get_den());
    for (long long i = 0; i < copies.get_si(); ++i) {
      res.out.configs.push_back(h.configs[c]);
      res.copy_of.push_back(c);
    }
  }
  return res;
}

namespace {

// Replace every configuration by a half-size subset such that resource
// degrees fall to ell_target. Exists iff the flow below saturates.
bool trim_to_half(const Hypergraph& h, long long ell_target, Hypergraph& out,
                  int& overflow) {
  const int nc = h.num_configs();
  const int s = 0, t = 1;
  MaxFlow net(2 + nc + h.num_resources());
  long long need = 0;
  std::vector<std::vector<int>> arcs(nc);
  for (int c = 0; c < nc; ++c) {
    long long half = h.configs[c].size() / 2;
    need += half;
    net.add_arc(s, 2 + c, half);
    for (int r : h.configs[c].resources)
      arcs[c].push_back(net.add_arc(2 + c, 2 + nc + r, 1));
  }
  for (int r = 0; r < h.num_resources(); ++r)
    net.add_arc(2 + nc + r, t, ell_target);

  if (net.calc(s, t) < need) {
    // Witness: the smallest cap the same flow would accept.
    overflow = 0;
    std::vector<int> deg(h.num_resources(), 0);
    for (const auto& c : h.configs)
      for (int r : c.resources) deg[r]++;
    for (int d : deg) overflow = std::max(overflow, d);
    return false;
  }
  out.players = h.players;
  out.resources = h.resources;
  for (int c = 0; c < nc; ++c) {
    Configuration cfg;
    cfg.player = h.configs[c].player;
    const auto& res = h.configs[c].resources;
    for (std::size_t i = 0; i < arcs[c].size(); ++i)
      if (net.flow_on(arcs[c][i]) > 0) cfg.resources.push_back(res[i]);
    std::sort(cfg.resources.begin(), cfg.resources.end());
    out.configs.push_back(std::move(cfg));
  }
  return true;
}

}  // namespace

RegularizeResult regularize_degree(const Hypergraph& h, long long ell_target,
                                   std::uint64_t seed) {
  if (ell_target < 1) throw Error("regularize_degree: ell_target must be >= 1");
  DegreeProfile prof = validate(h);
  if (!prof.is_regular) throw Error("regularize_degree: instance is not regular");

  RegularizeResult res;
  if (prof.ell == ell_target) {
    res.out = h;
    res.realized_ell = prof.ell;
    res.copy_of.resize(h.num_configs());
    for (int c = 0; c < h.num_configs(); ++c) res.copy_of[c] = c;
    return res;
  }

  if (prof.ell < ell_target) {
    long long copies = (ell_target + prof.ell - 1) / prof.ell;
    res.out.players = h.players;
    res.out.resources = h.resources;
    for (long long i = 0; i < copies; ++i)
      for (int c = 0; c < h.num_configs(); ++c) {
        res.out.configs.push_back(h.configs[c]);
        res.copy_of.push_back(c);
      }
    res.realized_ell = copies * prof.ell;
    return res;
  }

  // Degree above target: per player, keep a random sample of ell_target
  // configurations.
  Rng rng(substream(seed, "regularize"));
  Hypergraph sampled;
  sampled.players = h.players;
  sampled.resources = h.resources;
  std::vector<int> sampled_src;
  for (const auto& list : h.configs_by_player()) {
    auto take = rng.sample_indices(list.size(), static_cast<std::size_t>(ell_target));
    std::sort(take.begin(), take.end());
    for (std::size_t i : take) {
      sampled.configs.push_back(h.configs[list[i]]);
      sampled_src.push_back(list[i]);
    }
  }

  std::vector<int> deg(h.num_resources(), 0);
  int maxdeg = 0;
  for (const auto& c : sampled.configs)
    for (int r : c.resources) maxdeg = std::max(maxdeg, ++deg[r]);
  if (maxdeg <= ell_target) {
    res.out = std::move(sampled);
    res.realized_ell = ell_target;
    res.copy_of = std::move(sampled_src);
    return res;
  }

  // The sample overshoots some resource: halve every configuration under
  // the cap. Singletons cannot be halved.
  for (const auto& c : sampled.configs)
    if (c.size() < 2) {
      res.status = RegularizeResult::EdgeTooSmall;
      res.overflow_degree = maxdeg;
      return res;
    }
  Hypergraph trimmed;
  int overflow = 0;
  if (!trim_to_half(sampled, ell_target, trimmed, overflow)) {
    res.status = RegularizeResult::DegreeOverflow;
    res.overflow_degree = overflow;
    return res;
  }
  res.out = std::move(trimmed);
  res.realized_ell = ell_target;
  res.trimmed = true;
  res.copy_of = std::move(sampled_src);
  return res;
}

}  // namespace csc
