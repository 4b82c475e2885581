#pragma once
// Exact rational arithmetic and the retention-threshold encoding of a
// probability.
//
// Rational is GMP's canonicalising mpq_class: numerators and denominators
// stay coprime with positive denominator, so equality is structural.  All
// probabilities in the laboratory are rationals serialised as "num/den".

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "cubelab/errors.hpp"

namespace cubelab {

using Rational = mpq_class;
using BigInt = mpz_class;

inline bool is_probability(const Rational& p) {
  return sgn(p) >= 0 && p <= 1;
}

inline void check_probability(const Rational& p, const char* name) {
  if (!is_probability(p)) {
    throw GuardError(std::string(name) + " must lie in [0, 1], got " +
                     p.get_str());
  }
}

// Parse "a/b" or "a" with optional sign; denominator must be nonzero.
inline Rational parse_rational(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw GuardError("cannot parse rational from '" + text + "'");
  }
  if (sgn(q.get_den()) == 0) {
    throw GuardError("rational '" + text + "' has zero denominator");
  }
  q.canonicalize();
  return q;
}

// Always "num/den", even for integers, so records round-trip unambiguously.
inline std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

// Exact integer power p^e for rational p.
inline Rational rational_pow(const Rational& p, unsigned long e) {
  Rational out;
  mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(p.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(p.get_mpq_t()), e);
  out.canonicalize();
  return out;
}

// A probability folded onto the 64-bit word scale.  A uniform word w is
// "retained" iff w < floor(p * 2^64); p == 1 is special-cased so retention
// is certain rather than off by one part in 2^64.  For p < 1 the encoding
// bias |threshold/2^64 - p| is below 2^-64, far under one part in 2^60.
struct RetentionThreshold {
  std::uint64_t threshold = 0;
  bool always = false;

  bool retains(std::uint64_t word) const { return always || word < threshold; }
};

inline RetentionThreshold make_threshold(const Rational& p) {
  check_probability(p, "retention probability");
  if (p == 1) return RetentionThreshold{0, true};
  // floor(p * 2^64) with exact integers; p in [0,1) keeps it below 2^64.
  BigInt scaled = p.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 64);
  scaled /= p.get_den();
  std::uint64_t threshold = static_cast<std::uint64_t>(
      mpz_get_ui(scaled.get_mpz_t()));
  static_assert(sizeof(unsigned long) == 8,
                "retention threshold needs 64-bit unsigned long");
  return RetentionThreshold{threshold, false};
}

}  // namespace cubelab
