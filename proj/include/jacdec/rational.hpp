#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace jacdec {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws
/// std::invalid_argument on malformed text or a zero denominator.
inline Rational parse_rational(const std::string& text) {
  if (text.empty())
    throw std::invalid_argument("empty rational literal");
  Rational q;
  if (q.set_str(text, 10) != 0)
    throw std::invalid_argument("malformed rational literal '" + text + "'");
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer lcm_of_denominators(const Rational* first, const Rational* last) {
  Integer l = 1;
  for (; first != last; ++first)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), first->get_den_mpz_t());
  return l;
}

} // namespace jacdec
