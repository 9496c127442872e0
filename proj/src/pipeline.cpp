#include "csc/pipeline.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csc/errors.hpp"
#include "csc/hierarchy.hpp"
#include "csc/lp.hpp"
#include "csc/preprocess.hpp"
#include "csc/rng.hpp"
#include "csc/select.hpp"

namespace csc {

namespace {

void check_params(const PipelineParams& p) {
  if (p.ell_target != 0 && p.ell_target < 2)
    throw Error("ell_target must be 0 or at least 2");
  if (p.gamma_override < 0) throw Error("gamma_override must be nonnegative");
  if (p.c_final < 1) throw Error("c_final must be positive");
  if (p.restarts < 1) throw Error("restarts must be positive");
  if (p.finalize_repairs < 0) throw Error("finalize_repairs must be nonnegative");
  if (p.hier_retries < 1) throw Error("hier_retries must be positive");
  if (p.blowup_cap < 1) throw Error("blowup_cap must be positive");
  if (p.log_bits < 1 || p.log_bits > 62) throw Error("log_bits out of range");
  for (const Rat* c : {&p.c_ell, &p.c_alpha_lo, &p.c_alpha_hi, &p.c_gamma, &p.c_claim})
    if (*c <= 0) throw Error("pipeline constants must be positive");
  if (p.slack_lo <= 0 || p.slack_hi < p.slack_lo)
    throw Error("certification window is empty");
}

// kept sets survive preprocessing verbatim: duplication and degree
// normalization copy or shrink configurations but never touch resource ids.
RelaxedMatching pull_back(const Hypergraph& orig, const RelaxedMatching& m,
                          const std::vector<int>& back) {
  RelaxedMatching out(orig.players.size());
  for (std::size_t p = 0; p < m.entries.size(); ++p) {
    const auto& e = m.entries[p];
    if (!e) continue;
    out.entries[p] = MatchEntry{back[e->config], e->kept};
  }
  return out;
}

void compose(std::vector<int>& back, const std::vector<int>& copy_of) {
  std::vector<int> nb(copy_of.size());
  for (std::size_t i = 0; i < copy_of.size(); ++i) nb[i] = back[copy_of[i]];
  back = std::move(nb);
}

Json bound_json(const SelectionBoundReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["checks"] = r.checks;
  j["max_ratio"] = rat_str(r.max_ratio);
  j["failures"] = static_cast<long long>(r.failures.size());
  return j;
}

}  // namespace

SolveOutcome solve_pipeline(const Hypergraph& h, std::uint64_t seed,
                            const PipelineParams& params) {
  check_params(params);
  SolveOutcome out;
  Json& rep = out.report;

  DegreeProfile prof = validate(h);
  rep["instance"] = {{"players", h.num_players()},
                     {"resources", h.num_resources()},
                     {"configurations", h.num_configs()}};
  rep["seed"] = seed;
  rep["paper_profile"] = params.paper_profile;
  rep["constants"] = {{"c_ell", rat_str(params.c_ell)},
                      {"c_alpha_lo", rat_str(params.c_alpha_lo)},
                      {"c_alpha_hi", rat_str(params.c_alpha_hi)},
                      {"c_gamma", rat_str(params.c_gamma)},
                      {"c_claim", rat_str(params.c_claim)},
                      {"c_final", params.c_final}};

  Rat slack_lo = params.slack_lo, slack_hi = params.slack_hi;
  long long ell_target = params.ell_target;
  if (params.paper_profile) {
    slack_lo = make_rat(1, 2);
    slack_hi = make_rat(3, 2);
    if (ell_target == 0 && h.num_resources() > 1) {
      Rat lnn = rat_ln(h.num_resources(), params.log_bits);
      ell_target = std::max<long long>(2, rat_floor(params.c_ell * lnn * lnn * lnn));
    }
  }

  Hypergraph work = h;
  std::vector<int> back(work.configs.size());
  std::iota(back.begin(), back.end(), 0);

  Json pre;
  pre["regular_input"] = prof.is_regular;
  if (!prof.is_regular) {
    LpResult lp = solve_matching_lp(work);
    if (!lp.feasible) {
      pre["cover"] = "infeasible";
      pre["stuck_players"] = lp.stuck_players;
      rep["preprocess"] = std::move(pre);
      rep["result"] = {{"solved", false}, {"infeasible", true}};
      out.infeasible = true;
      return out;
    }
    DuplicateResult dup = duplicate_to_regular(work, lp.x, params.blowup_cap);
    pre["cover"] = "fractional";
    pre["duplication_factor"] = dup.T;
    compose(back, dup.copy_of);
    work = std::move(dup.out);
    prof = validate(work);
    pre["configurations"] = work.num_configs();
  }

  if (ell_target > 0 && prof.ell > 1 && prof.ell != ell_target) {
    Json dj;
    dj["target"] = ell_target;
    std::optional<RegularizeResult> got;
    int tries = 0, overflow = INT_MAX;
    bool edge_too_small = false;
    while (tries < params.hier_retries) {
      RegularizeResult rr = regularize_degree(
          work, ell_target, substream(seed, "regularize", static_cast<std::uint64_t>(tries)));
      ++tries;
      if (rr.status == RegularizeResult::Ok) {
        got = std::move(rr);
        break;
      }
      if (rr.status == RegularizeResult::EdgeTooSmall) {
        edge_too_small = true;
        break;
      }
      overflow = std::min(overflow, rr.overflow_degree);
    }
    dj["attempts"] = tries;
    if (got) {
      dj["status"] = "ok";
      dj["realized"] = got->realized_ell;
      dj["trimmed"] = got->trimmed;
      compose(back, got->copy_of);
      work = std::move(got->out);
      prof = validate(work);
    } else {
      // the normalized degree is a convenience, not a correctness need:
      // keep the instance as witnessed and say so.
      dj["status"] = edge_too_small ? "edge-too-small" : "overflow";
      if (!edge_too_small) dj["overflow_degree"] = overflow;
      dj["note"] = "kept the witnessed degree";
    }
    pre["degree"] = std::move(dj);
  }
  rep["preprocess"] = std::move(pre);
  out.ell = prof.ell;

  if (prof.ell <= 1) {
    // one forced configuration per player, pairwise disjoint by the degree
    // bound on resources: keep everything.
    auto by_player = work.configs_by_player();
    RelaxedMatching m(work.players.size());
    for (int p = 0; p < work.num_players(); ++p) {
      int c = by_player[p].at(0);
      m.entries[p] = MatchEntry{c, work.configs[c].resources};
    }
    out.matching = pull_back(h, m, back);
    out.alpha = achieved_alpha(h, out.matching).value();
    VerifyReport vr = verify(h, out.matching, out.alpha);
    if (!vr.accepted) throw Error("integral cover failed verification");
    out.solved = true;
    rep["route"] = "integral";
    rep["result"] = {{"solved", true}, {"alpha", rat_str(out.alpha)}, {"verified", true}};
    return out;
  }

  rep["route"] = "pipeline";
  const long long ell = prof.ell;
  SizeClassIndex idx = size_classes(work, ell);
  const long long gamma = params.gamma_override > 0
                              ? params.gamma_override
                              : gamma_value(idx.depth, ell, params.c_gamma, params.log_bits);
  out.gamma = gamma;
  rep["ell"] = ell;
  rep["depth"] = idx.depth;
  rep["gamma"] = gamma;
  if (params.paper_profile) rep["gamma_bound_remark"] = "gamma <= 310000 log log(n)";

  SelectParams sp;
  sp.dev_near = params.c_alpha_lo;
  sp.dev_far = params.c_alpha_hi;
  sp.log_bits = params.log_bits;
  sp.max_rounds = params.max_rounds;

  auto by_player = work.configs_by_player();
  std::optional<RelaxedMatching> best;
  Rat best_alpha{0};
  int best_attempt = -1;
  Json attempts = Json::array();

  for (int i = 0; i < params.restarts; ++i) {
    const std::uint64_t sub = substream(seed, "attempt", static_cast<std::uint64_t>(i));
    Json at;
    at["attempt"] = i;

    CertifiedHierarchy cert = sample_certified(work, idx, substream(sub, "hierarchy"),
                                               params.hier_retries, slack_lo, slack_hi);
    at["hierarchy"] = {{"certified", cert.certified},
                       {"attempts", cert.attempts},
                       {"size_checks", cert.size_report.checks},
                       {"size_failures", static_cast<long long>(cert.size_report.failures.size())},
                       {"overlap_checks", cert.overlap_report.checks},
                       {"overlap_failures",
                        static_cast<long long>(cert.overlap_report.failures.size())}};

    SelectReport sr = select_configs(work, idx, cert.hier, sp, substream(sub, "select"));
    at["selection"] = {{"converged", sr.converged},
                       {"rounds", sr.rounds},
                       {"events", sr.events},
                       {"vacuous", sr.vacuous},
                       {"score", rat_str(sr.score)}};

    Selection cursel = sr.sel;
    std::optional<ReconstructResult> rc;
    std::optional<FinalizeResult> fin;
    std::string fail_reason;
    int repairs = 0;
    for (int r = 0; r <= params.finalize_repairs; ++r) {
      repairs = r;
      try {
        rc = reconstruct(work, idx, cert.hier, cursel, gamma,
                         substream(sub, "reconstruct", static_cast<std::uint64_t>(r)),
                         params.lift);
        fin = finalize_matching(work, cursel, rc->out, gamma, params.c_final);
        break;
      } catch (const LiftCollapsed& e) {
        fail_reason = std::string("lift collapsed: ") + e.what();
        break;
      } catch (const FinalizeInfeasible& e) {
        if (r == params.finalize_repairs) {
          fail_reason = std::string("finalize: ") + e.what();
          break;
        }
        // redraw the players whose chosen configurations starved; the rest
        // of the selection survives.
        Rng rr(substream(sub, "repair", static_cast<std::uint64_t>(r)));
        std::vector<char> hit(work.players.size(), 0);
        for (int c : e.deficient) hit[work.configs[c].player] = 1;
        for (int p = 0; p < work.num_players(); ++p)
          if (hit[p]) cursel.choice[p] = by_player[p][rr.index(by_player[p].size())];
      }
    }
    at["repairs"] = repairs;

    at["coverage"] = {
        {"sampled_mass_bound",
         bound_json(check_selection_bound(work, idx, cert.hier, cursel, Rat(1000),
                                          params.log_bits))},
        {"chosen_mass_bound",
         bound_json(check_chosen_bound(work, idx, cert.hier, cursel, params.c_claim,
                                       params.log_bits))}};

    if (rc) {
      Json levels = Json::array();
      for (const LevelTrace& tr : rc->levels) {
        levels.push_back({{"level", tr.j},
                          {"lift_attempts", tr.lift_attempts},
                          {"lift_multiplier", rat_str(tr.lift_multiplier)},
                          {"excluded", tr.phase2_excluded},
                          {"conflicts", tr.conflicts},
                          {"deletions", tr.deletions},
                          {"mu_ok", tr.mu_window_ok}});
      }
      at["reconstruct"] = {{"levels", std::move(levels)}, {"lift_clamped", rc->lift_clamped}};
    }
    if (fin) {
      at["finalize"] = {{"nominal_demand", fin->nominal_demand},
                        {"scale", rat_str(fin->scale)},
                        {"alpha", rat_str(fin->alpha)}};
    } else {
      at["failed"] = fail_reason;
    }
    attempts.push_back(std::move(at));

    if (fin) {
      if (!best || fin->alpha < best_alpha) {
        best = std::move(fin->matching);
        best_alpha = fin->alpha;
        best_attempt = i;
      }
      if (best_alpha == 1 || (cert.certified && sr.converged)) break;
    }
  }
  rep["attempts"] = std::move(attempts);

  if (!best) {
    rep["result"] = {{"solved", false}, {"infeasible", false}};
    return out;
  }
  out.matching = pull_back(h, *best, back);
  out.alpha = achieved_alpha(h, out.matching).value();
  VerifyReport vr = verify(h, out.matching, out.alpha);
  if (!vr.accepted) throw Error("pipeline produced an invalid matching");
  out.solved = true;
  out.attempt = best_attempt;
  rep["result"] = {{"solved", true},
                   {"attempt", best_attempt},
                   {"alpha", rat_str(out.alpha)},
                   {"alpha_working", rat_str(best_alpha)},
                   {"verified", true}};
  return out;
}

}  // namespace csc
