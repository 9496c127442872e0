#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace csc {

// Exact rational arithmetic. All accept/reject decisions, LP pivots and
// threshold comparisons go through Rat; doubles appear only in diagnostics.
using Rat = mpq_class;

inline Rat make_rat(long long num, long long den = 1) {
  Rat r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

inline long long rat_floor(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q.get_si();
}

inline long long rat_ceil(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q.get_si();
}

/// Nearest dyadic rational to x with `bits` fractional bits. Used to pin
/// irrational constants (natural logs) to exact values so that every
/// comparison downstream is reproducible.
inline Rat dyadic(double x, int bits = 32) {
  long double scale = std::ldexp(1.0L, bits);
  long double scaled = std::llroundl(static_cast<long double>(x) * scale);
  Rat r(mpz_class(static_cast<double>(scaled)), mpz_class(1) << bits);
  r.canonicalize();
  return r;
}

/// ln(n) as a fixed-precision dyadic rational.
inline Rat rat_ln(long long n, int bits = 32) {
  return dyadic(std::log(static_cast<double>(n)), bits);
}

inline std::string rat_str(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Parses "p", "p/q" or a plain decimal like "0.25".
std::optional<Rat> rat_parse(const std::string& s);

/// Alpha values: nullopt encodes "no finite alpha" (some kept-set empty or
/// a player uncovered).
using MaybeAlpha = std::optional<Rat>;

inline std::string alpha_str(const MaybeAlpha& a) {
  return a ? rat_str(*a) : std::string("inf");
}

}  // namespace csc
