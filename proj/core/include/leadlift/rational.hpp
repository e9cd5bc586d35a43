#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "leadlift/error.hpp"

namespace leadlift {

using Integer = mpz_class;
// Always kept canonical: gcd(|num|, den) = 1, den >= 1.
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p", "p/q" or a decimal literal such as "-1.25" or "3e-2".
// Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

}  // namespace leadlift
