#pragma once

#include <limits>

#include "leadlift/oracle.hpp"
#include "leadlift/rational.hpp"

namespace leadlift {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Closed interval of extended reals, endpoints rounded outward.
struct ExponentInterval {
  double lo = -kInfinity;
  double hi = kInfinity;

  bool is_infinite() const noexcept { return lo == kInfinity; }
  double width() const noexcept { return is_infinite() ? 0.0 : hi - lo; }
};

// -log(error) / log(height) for height >= 2; [+inf, +inf] for exact zeros.
// Undecided errors are rejected.
ExponentInterval exponent_interval(const AbsValueResult& error, const Integer& height);

// Outward-rounded natural logarithm of a positive rational interval.
ExponentInterval log_interval(const Rational& lo, const Rational& hi);

// Outward-rounded interval arithmetic on doubles, enough for the transfer
// bound bookkeeping.
ExponentInterval add(const ExponentInterval& a, const ExponentInterval& b);
ExponentInterval sub(const ExponentInterval& a, const ExponentInterval& b);
ExponentInterval mul(const ExponentInterval& a, const ExponentInterval& b);
ExponentInterval div(const ExponentInterval& a, const ExponentInterval& b);  // 0 not in b
ExponentInterval abs(const ExponentInterval& a);
ExponentInterval max(const ExponentInterval& a, const ExponentInterval& b);
ExponentInterval scale(const ExponentInterval& a, double factor);  // factor exact

}  // namespace leadlift
