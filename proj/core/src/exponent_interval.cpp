#include "leadlift/exponent_interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

#include "leadlift/error.hpp"

namespace leadlift {

namespace {

constexpr mpfr_prec_t kLogPrecision = 128;

class Mpfr {
 public:
  Mpfr() { mpfr_init2(v_, kLogPrecision); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// log(q) rounded in the given direction; q > 0.
void log_rounded(Mpfr& out, const Rational& q, mpfr_rnd_t rnd) {
  Mpfr x;
  mpfr_set_q(x.get(), q.get_mpq_t(), rnd);
  mpfr_log(out.get(), x.get(), rnd);
}

double down(double x) { return std::nextafter(x, -kInfinity); }
double up(double x) { return std::nextafter(x, kInfinity); }

}  // namespace

ExponentInterval log_interval(const Rational& lo, const Rational& hi) {
  if (lo <= 0) throw InvalidArgument("log_interval: nonpositive argument");
  Mpfr a, b;
  log_rounded(a, lo, MPFR_RNDD);
  log_rounded(b, hi, MPFR_RNDU);
  return {mpfr_get_d(a.get(), MPFR_RNDD), mpfr_get_d(b.get(), MPFR_RNDU)};
}

ExponentInterval exponent_interval(const AbsValueResult& error, const Integer& height) {
  if (error.is_zero()) return {kInfinity, kInfinity};
  if (error.is_undecided()) throw InvalidArgument("exponent_interval: undecided error");
  if (height < 2) throw InvalidArgument("exponent_interval: height must be >= 2");

  Mpfr log_h_lo, log_h_hi, log_e_lo, log_e_hi, num, res_lo, res_hi;
  log_rounded(log_h_lo, Rational(height), MPFR_RNDD);
  log_rounded(log_h_hi, Rational(height), MPFR_RNDU);
  log_rounded(log_e_lo, error.lo, MPFR_RNDD);
  log_rounded(log_e_hi, error.hi, MPFR_RNDU);

  // lower: -log(hi) / log(height)
  mpfr_neg(num.get(), log_e_hi.get(), MPFR_RNDD);
  mpfr_div(res_lo.get(), num.get(), mpfr_sgn(num.get()) >= 0 ? log_h_hi.get() : log_h_lo.get(),
           MPFR_RNDD);
  // upper: -log(lo) / log(height)
  mpfr_neg(num.get(), log_e_lo.get(), MPFR_RNDU);
  mpfr_div(res_hi.get(), num.get(), mpfr_sgn(num.get()) >= 0 ? log_h_lo.get() : log_h_hi.get(),
           MPFR_RNDU);
  return {mpfr_get_d(res_lo.get(), MPFR_RNDD), mpfr_get_d(res_hi.get(), MPFR_RNDU)};
}

ExponentInterval add(const ExponentInterval& a, const ExponentInterval& b) {
  return {down(a.lo + b.lo), up(a.hi + b.hi)};
}

ExponentInterval sub(const ExponentInterval& a, const ExponentInterval& b) {
  return {down(a.lo - b.hi), up(a.hi - b.lo)};
}

ExponentInterval mul(const ExponentInterval& a, const ExponentInterval& b) {
  const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {down(*std::min_element(p, p + 4)), up(*std::max_element(p, p + 4))};
}

ExponentInterval div(const ExponentInterval& a, const ExponentInterval& b) {
  if (b.lo <= 0 && b.hi >= 0) throw InvalidArgument("interval division by an interval containing 0");
  const double p[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
  return {down(*std::min_element(p, p + 4)), up(*std::max_element(p, p + 4))};
}

ExponentInterval abs(const ExponentInterval& a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return {-a.hi, -a.lo};
  return {0.0, std::max(-a.lo, a.hi)};
}

ExponentInterval max(const ExponentInterval& a, const ExponentInterval& b) {
  return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

ExponentInterval scale(const ExponentInterval& a, double factor) {
  return mul(a, ExponentInterval{factor, factor});
}

}  // namespace leadlift
