#pragma once

#include <cstdint>
#include <vector>

#include "csc/core.hpp"

namespace csc {

/// Instance with every configuration replaced by x_C * T copies, where T is
/// the least common denominator of the LP point x. Players end with degree
/// exactly T and resources with degree at most T, so the result is
/// T-regular. copy_of maps each output configuration to its original.
struct DuplicateResult {
  Hypergraph out;
  long long T = 1;
  std::vector<int> copy_of;
};

/// Requires x to cover every player exactly (tight player constraints).
/// Throws BlowupExceeded when T exceeds blowup_cap.
DuplicateResult duplicate_to_regular(const Hypergraph& h, const std::vector<Rat>& x,
                                     long long blowup_cap = 200000);

/// Degree normalization toward ell_target.
///  - degree below target: every configuration is duplicated
///    ceil(target / ell0) times; realized degree is that multiple of ell0.
///  - degree above target: ell_target configurations are sampled per player,
///    and if some resource still exceeds the cap, every configuration is
///    trimmed to half size by a flow that respects the cap (each kept-set
///    ratio then pays a factor of at most 2 on the way back).
/// DegreeOverflow reports the best cap the trim could witness; EdgeTooSmall
/// means a singleton configuration cannot be halved.
struct RegularizeResult {
  enum Status { Ok, DegreeOverflow, EdgeTooSmall } status = Ok;
  Hypergraph out;
  long long realized_ell = 0;
  bool trimmed = false;
  std::vector<int> copy_of;      // out config -> input config
  int overflow_degree = 0;       // max resource degree seen on failure
};

RegularizeResult regularize_degree(const Hypergraph& h, long long ell_target,
                                   std::uint64_t seed);

}  // namespace csc
