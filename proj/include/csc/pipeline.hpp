#pragma once

#include <cstdint>

#include "csc/assign.hpp"
#include "csc/core.hpp"
#include "csc/io.hpp"
#include "csc/rational.hpp"

namespace csc {

/// Every knob of the end-to-end solve. The constant defaults are the
/// full-scale values; at desk scale they are kept as-is and only the
/// certification window and ell are relaxed (see slack_lo/slack_hi and
/// ell_target).
struct PipelineParams {
  long long ell_target = 0;   // 0 keeps the instance's witnessed degree
  bool paper_profile = false; // full-scale window [1/2, 3/2], derived ell
  Rat c_ell{300000};          // ell = c_ell * ln(n)^3 under the paper profile
  Rat c_alpha_lo{63};         // near-level deviation coefficient
  Rat c_alpha_hi{135};        // far-level deviation coefficient (scaled 1/ell)
  Rat c_gamma{100000};        // load cap coefficient
  Rat c_claim{2000};          // chosen-coverage bound coefficient
  long long c_final = 100;    // nominal demand divisor, floor(|C|/(c_final*gamma))
  long long gamma_override = 0;  // 0 derives gamma from c_gamma
  Rat slack_lo{1, 4};         // hierarchy certification window at desk scale
  Rat slack_hi{4};
  int hier_retries = 50;      // resampling budget per hierarchy
  int restarts = 20;          // independent attempts (fresh hierarchy+selection)
  int finalize_repairs = 50;  // per-attempt redraws of starved players
  long long blowup_cap = 200000;
  long long max_rounds = 0;   // selection resample budget; 0 means 10 * players
  int log_bits = 32;          // dyadic precision of every ln in the constants
  LiftParams lift;
};

struct SolveOutcome {
  bool solved = false;
  bool infeasible = false;   // certified: no fractional cover exists at all
  RelaxedMatching matching;  // on the original instance, when solved
  Rat alpha{0};              // relaxation achieved on the original instance
  long long ell = 0;         // working degree after preprocessing
  long long gamma = 0;       // load cap used (0 when the run never got there)
  int attempt = -1;          // restart that produced the matching
  Json report;               // full diagnostics, deterministic per seed
};

/// Runs preprocess -> hierarchy -> select -> reconstruct -> finalize and
/// maps the best matching found back onto the original instance. Integral
/// covers (1-regular inputs, or an integral LP vertex) short-circuit to a
/// perfect matching. A returned outcome with solved = false and
/// infeasible = false means every restart failed; the report says where.
SolveOutcome solve_pipeline(const Hypergraph& h, std::uint64_t seed,
                            const PipelineParams& params = {});

}  // namespace csc
