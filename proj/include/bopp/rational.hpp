#pragma once

#include <gmpxx.h>

#include <string>

#include "bopp/error.hpp"

namespace bopp {

/// Exact rational scalar. GMP requires operands in canonical form
/// (positive denominator, coprime numerator/denominator); arithmetic then
/// preserves it. Always construct through rat() or rational_from_string().
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw StructuralError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p" or "p/q" with arbitrary-precision parts.
inline Rational rational_from_string(const std::string& text) {
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
    throw ParseError("malformed rational: " + text);
  if (q.get_den() == 0) throw ParseError("rational with zero denominator: " + text);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace bopp
