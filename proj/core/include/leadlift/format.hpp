#pragma once

#include <string>

#include "leadlift/rational.hpp"

namespace leadlift {

// Report formatting: decimal strings with a fixed number of significant
// digits; infinities print as "inf".
std::string format_decimal(double x, int significant = 12);
std::string format_decimal(const Rational& q, int significant = 12);

}  // namespace leadlift
