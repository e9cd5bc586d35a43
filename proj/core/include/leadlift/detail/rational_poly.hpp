#pragma once

// Small dense polynomial toolkit over Q used by the real-number oracle
// (square-free checks, Sturm counts, exact-root tests). Constant term first,
// no trailing zeros; the zero polynomial is the empty vector.

#include <vector>

#include "leadlift/polynomial.hpp"
#include "leadlift/rational.hpp"

namespace leadlift::detail {

using QPoly = std::vector<Rational>;

QPoly to_qpoly(const IntegerPolynomial& p);
QPoly to_qpoly(const std::vector<Integer>& coeffs);
void trim(QPoly& p);
int degree(const QPoly& p);
QPoly derivative(const QPoly& p);
// Remainder of a / b; b must be nonzero.
QPoly remainder(const QPoly& a, const QPoly& b);
// Monic gcd (empty when both inputs are zero).
QPoly gcd(QPoly a, QPoly b);
Rational evaluate(const QPoly& p, const Rational& x);
int sign_at(const QPoly& p, const Rational& x);

// Sturm chain p, p', -rem(...), ...
std::vector<QPoly> sturm_chain(const QPoly& p);
// Number of distinct real roots in (lo, hi].
int count_roots(const std::vector<QPoly>& chain, const Rational& lo, const Rational& hi);

// Clears denominators and content; leading coefficient positive.
std::vector<Integer> primitive_part(const QPoly& p);
std::vector<Integer> primitive_part(std::vector<Integer> p);

}  // namespace leadlift::detail
