#include "leadlift/format.hpp"

#include <mpfr.h>

#include <cmath>
#include <cstdio>
#include <limits>

#include "leadlift/detail/cursor.hpp"

namespace leadlift {

namespace detail {

std::string_view Cursor::digits() {
  const std::size_t start = pos_;
  while (!done() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
  if (pos_ == start) fail("expected digit");
  return text_.substr(start, pos_ - start);
}

Integer Cursor::integer() {
  bool negative = false;
  if (consume('-')) {
    negative = true;
  } else {
    consume('+');
  }
  Integer z(std::string(digits()), 10);
  return negative ? Integer(-z) : z;
}

std::uint64_t Cursor::unsigned64() {
  const std::size_t at = position();
  const std::string d(digits());
  Integer z(d, 10);
  if (z > Integer("18446744073709551615", 10)) throw ParseError(full_, at, "value exceeds 64 bits");
  return std::stoull(d);
}

Rational Cursor::decimal(std::string* literal) {
  const std::size_t start = pos_;
  bool negative = false;
  if (consume('-')) {
    negative = true;
  } else {
    consume('+');
  }
  std::string mantissa(digits());
  long scale = 0;
  if (consume('.')) {
    const auto frac = digits();
    mantissa += frac;
    scale = -static_cast<long>(frac.size());
  }
  if (consume('e') || consume('E')) {
    bool exp_negative = false;
    if (consume('-')) {
      exp_negative = true;
    } else {
      consume('+');
    }
    const std::size_t at = position();
    const auto e = digits();
    if (e.size() > 6) throw ParseError(full_, at, "exponent too large");
    const long ev = std::stol(std::string(e));
    scale += exp_negative ? -ev : ev;
  }
  Integer num(mantissa, 10);
  if (negative) num = -num;
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  Rational value = scale >= 0 ? Rational(num * p) : make_rational(num, p);
  if (literal) *literal = std::string(text_.substr(start, pos_ - start));
  return value;
}

Rational Cursor::rational() {
  const std::size_t start = pos_;
  if (!consume('-')) consume('+');
  digits();
  if (peek() == '/') {
    pos_ = start;
    const Integer num = integer();
    expect('/');
    const std::size_t at = position();
    const Integer den(std::string(digits()), 10);
    if (den == 0) throw ParseError(full_, at, "zero denominator");
    return make_rational(num, den);
  }
  pos_ = start;
  return decimal();
}

}  // namespace detail

Rational parse_rational(std::string_view text) {
  detail::Cursor c(text);
  Rational q = c.rational();
  c.expect_end();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string format_decimal(double x, int significant) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, x);
  return buf;
}

std::string format_decimal(const Rational& q, int significant) {
  mpfr_t v;
  mpfr_init2(v, 256);
  mpfr_set_q(v, q.get_mpq_t(), MPFR_RNDN);
  char* out = nullptr;
  mpfr_asprintf(&out, "%.*Rg", significant, v);
  std::string s(out);
  mpfr_free_str(out);
  mpfr_clear(v);
  return s;
}

}  // namespace leadlift
