#include "leadlift/oracle.hpp"

#include <algorithm>
#include <random>

#include "leadlift/error.hpp"

namespace leadlift {

namespace {

Rational pow2(long e) {
  Integer p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(std::labs(e)));
  return e >= 0 ? Rational(p) : make_rational(1, p);
}

Integer floor_of(const Rational& q) {
  Integer z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z;
}

Integer ceil_of(const Rational& q) {
  Integer z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z;
}

// Widens [lo, hi] (width <= 2^-(bits+1)) to the dyadic grid 2^-(bits+2).
Enclosure dyadic_outward(const Rational& lo, const Rational& hi, unsigned bits) {
  const Rational scale = pow2(static_cast<long>(bits) + 2);
  Rational a(floor_of(lo * scale));
  Rational b(ceil_of(hi * scale));
  a /= scale;
  b /= scale;
  return Enclosure{a, b, bits};
}

Enclosure point(const Rational& x, unsigned bits) { return Enclosure{x, x, bits}; }

Enclosure enclose_euler(unsigned bits) {
  // Tail after 1/N! is at most 2/(N+1)!.
  const Integer target = Integer(2) * Integer(pow2(static_cast<long>(bits) + 1));
  Integer fact = 1;  // (N+1)!
  unsigned n = 0;
  fact = 1;
  while (fact < target) {
    ++n;
    fact *= n + 1;
  }
  // S_N = sum_{j<=N} N!/j! / N!
  Integer n_fact = 1;
  for (unsigned j = 2; j <= n; ++j) n_fact *= j;
  Integer num = 0, term = 1;
  for (unsigned j = n + 1; j-- > 0;) {
    num += term;  // term = N!/j!
    term *= std::max(j, 1u);
  }
  const Rational lo = make_rational(num, n_fact);
  const Rational hi = lo + make_rational(2, fact);
  return dyadic_outward(lo, hi, bits);
}

Enclosure enclose_liouville(unsigned base, unsigned bits) {
  // The tail beyond the m-th term is at most 2 base^-(m+1)!, which is below
  // 2^-(bits+2) once (m+1)! * floor(log2 base) >= bits + 3.
  const unsigned long log2_base = mpz_sizeinbase(Integer(base).get_mpz_t(), 2) - 1;
  const unsigned long needed = bits + 3ul;
  Rational sum = 0;
  unsigned long fact = 1;  // m!
  for (unsigned long m = 1;; ++m) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), base, fact);
    sum += make_rational(1, p);
    const unsigned long next_fact = fact * (m + 1);
    if (next_fact * log2_base >= needed) {
      return dyadic_outward(sum, sum + pow2(-static_cast<long>(bits) - 2), bits);
    }
    fact = next_fact;
  }
}

Enclosure enclose_random(std::uint64_t seed, unsigned bits) {
  // 10^-N <= 2^-(bits+1)
  const Integer target = Integer(pow2(static_cast<long>(bits) + 1));
  Integer ten_n = 1;
  unsigned n = 0;
  while (ten_n < target) {
    ten_n *= 10;
    ++n;
  }
  std::mt19937_64 engine(seed);
  std::string digits(n, '0');
  for (unsigned i = 0; i < n; ++i) digits[i] = static_cast<char>('0' + engine() % 10);
  const Rational lo = make_rational(Integer(n ? digits : std::string("0"), 10), ten_n);
  return dyadic_outward(lo, lo + make_rational(1, ten_n), bits);
}

Enclosure enclose_continued_fraction(const ContinuedFractionValue& cf, unsigned bits) {
  const auto& a = cf.quotients;
  const std::size_t j = *cf.period_start;
  const Rational target = pow2(-static_cast<long>(bits) - 1);
  Integer p0 = 1, q0 = 0, p1 = a[0], q1 = 1;
  for (std::size_t i = 1;; ++i) {
    const Integer& ai = i < a.size() ? a[i] : a[j + (i - j) % (a.size() - j)];
    Integer p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = std::move(p2);
    q1 = std::move(q2);
    // xi lies between consecutive convergents, which are 1/(q0 q1) apart.
    if (make_rational(1, q0 * q1) <= target) {
      Rational x = make_rational(p0, q0), y = make_rational(p1, q1);
      if (x > y) std::swap(x, y);
      return dyadic_outward(x, y, bits);
    }
  }
}

Enclosure enclose_algebraic(const AlgebraicValue& v, unsigned bits) {
  const detail::QPoly q = detail::to_qpoly(v.minimal_polynomial);
  const Rational target = pow2(-static_cast<long>(bits) - 1);
  Rational lo = v.lo, hi = v.hi;
  const int s_lo = detail::sign_at(q, lo);
  while (hi - lo > target) {
    Rational mid = (lo + hi) / 2;
    const int s = detail::sign_at(q, mid);
    if (s == 0) return point(mid, bits);
    (s == s_lo ? lo : hi) = mid;
  }
  return dyadic_outward(lo, hi, bits);
}

Enclosure compute_enclosure(const RealSpec& spec, unsigned bits);

Enclosure enclose_mobius(const MobiusImage& v, unsigned bits) {
  const bool stream = v.inner->is_stream();
  const Rational target = pow2(-static_cast<long>(bits) - 1);
  for (unsigned w = bits + 16;; w *= 2) {
    if ((stream && w > 2 * kDefaultBudgetBits) || w > kHardLimitBits) {
      throw Undecided("mobius image: cannot separate inner value from node " + v.r.get_str());
    }
    const Enclosure inner = compute_enclosure(*v.inner, w);
    const Rational d_lo = v.m * (inner.lo - v.r);
    const Rational d_hi = v.m * (inner.hi - v.r);
    if (d_lo <= 0 && d_hi >= 0) continue;
    const Rational lo = 1 / d_hi, hi = 1 / d_lo;
    if (hi - lo <= target) return dyadic_outward(lo, hi, bits);
  }
}

Enclosure compute_enclosure(const RealSpec& spec, unsigned bits) {
  if (auto q = spec.exact_rational()) return point(*q, bits);
  if (const auto* v = spec.get_if<AlgebraicValue>()) return enclose_algebraic(*v, bits);
  if (const auto* v = spec.get_if<ContinuedFractionValue>()) {
    return enclose_continued_fraction(*v, bits);
  }
  if (spec.get_if<EulerNumber>()) return enclose_euler(bits);
  if (const auto* v = spec.get_if<LiouvilleNumber>()) return enclose_liouville(v->base, bits);
  if (const auto* v = spec.get_if<RandomDigits>()) return enclose_random(v->seed, bits);
  if (const auto* v = spec.get_if<MobiusImage>()) return enclose_mobius(*v, bits);
  throw InvalidArgument("enclose: unsupported spec");
}

std::pair<Rational, Rational> interval_mul(const Rational& a, const Rational& b, const Rational& c,
                                           const Rational& d) {
  const Rational p[4] = {a * c, a * d, b * c, b * d};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

}  // namespace

AbsValueResult AbsValueResult::positive(Rational lo, Rational hi) {
  AbsValueResult r;
  r.kind = Kind::PositiveInterval;
  r.lo = std::move(lo);
  r.hi = std::move(hi);
  return r;
}

AbsValueResult AbsValueResult::exact_zero() {
  AbsValueResult r;
  r.kind = Kind::ExactZero;
  return r;
}

AbsValueResult AbsValueResult::undecided() {
  AbsValueResult r;
  r.kind = Kind::Undecided;
  r.budget_exhausted = true;
  return r;
}

AbsValueResult AbsValueResult::scaled(const Integer& c) const {
  if (kind != Kind::PositiveInterval) return *this;
  const Integer f = abs(c);
  if (f == 0) return exact_zero();
  return positive(lo * f, hi * f);
}

RealOracle::RealOracle(RealSpec spec) : spec_(std::move(spec)) {
  exact_ = spec_.exact_rational();
  if (!exact_) {
    algebraic_ = spec_.algebraic_form();
    if (algebraic_) minimal_ = detail::to_qpoly(algebraic_->minimal_polynomial);
  }
}

const Enclosure& RealOracle::enclose(unsigned bits) {
  if (bits < 1) throw InvalidArgument("enclose: bits must be >= 1");
  auto it = cache_.find(bits);
  if (it == cache_.end()) it = cache_.emplace(bits, compute_enclosure(spec_, bits)).first;
  return it->second;
}

std::vector<Enclosure> RealOracle::powers(unsigned n, unsigned bits) {
  if (n < 1) throw InvalidArgument("powers: n must be >= 1");
  std::vector<Enclosure> out;
  if (exact_) {
    Rational x = 1;
    for (unsigned m = 1; m <= n; ++m) {
      x *= *exact_;
      out.push_back(point(x, bits));
    }
    return out;
  }
  const Rational target = pow2(-static_cast<long>(bits));
  for (unsigned w = std::max(kInitialWorkingBits, bits + 8);; w *= 2) {
    const Enclosure& e = enclose(w);
    out.clear();
    Rational lo = e.lo, hi = e.hi;
    bool ok = hi - lo <= target;
    out.push_back(Enclosure{lo, hi, bits});
    for (unsigned m = 2; m <= n && ok; ++m) {
      std::tie(lo, hi) = interval_mul(lo, hi, e.lo, e.hi);
      ok = hi - lo <= target;
      out.push_back(Enclosure{lo, hi, bits});
    }
    if (ok) return out;
    if (w > kHardLimitBits) throw Undecided("powers: precision limit reached");
  }
}

bool RealOracle::is_exact_root(const IntegerPolynomial& p) const {
  if (exact_) return eval_rational(p, *exact_) == 0;
  if (!algebraic_) return false;
  // xi is the only root of the square-free minimal polynomial in (lo, hi),
  // so P(xi) = 0 iff gcd(P, minpoly) changes sign across the interval.
  const detail::QPoly g = detail::gcd(detail::to_qpoly(p), minimal_);
  if (detail::degree(g) < 1) return false;
  return detail::sign_at(g, algebraic_->lo) * detail::sign_at(g, algebraic_->hi) < 0;
}

SignedValue RealOracle::evaluate(const IntegerPolynomial& p, unsigned rel_bits,
                                 unsigned budget_bits) {
  SignedValue out;
  if (p.is_zero() || is_exact_root(p)) {
    out.kind = SignedValue::Kind::ExactZero;
    return out;
  }
  if (exact_) {
    const Rational v = eval_rational(p, *exact_);
    out.kind = SignedValue::Kind::Interval;
    out.lo = v;
    out.hi = v;
    return out;
  }
  const bool stream = spec_.is_stream();
  const Rational rel = pow2(-static_cast<long>(rel_bits));
  const auto& c = p.coefficients();
  const std::size_t n = c.size() - 1;
  unsigned w = std::max(kInitialWorkingBits, rel_bits + 8);
  if (stream) w = std::min(w, std::max(budget_bits, 1u));
  while (true) {
    const Enclosure& e = enclose(w);
    const Rational mid = (e.lo + e.hi) / 2;
    const Rational rad = (e.hi - e.lo) / 2;
    // Taylor coefficients of P at mid.
    std::vector<Rational> t(c.begin(), c.end());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = n; j-- > i;) t[j] += mid * t[j + 1];
    }
    Rational spread = 0, rad_pow = 1;
    for (std::size_t j = 1; j <= n; ++j) {
      rad_pow *= rad;
      spread += abs(t[j]) * rad_pow;
    }
    const Rational center = abs(t[0]);
    if (center > spread) {
      const Rational lo = center - spread, hi = center + spread;
      if (hi - lo <= lo * rel) {
        out.kind = SignedValue::Kind::Interval;
        if (t[0] > 0) {
          out.lo = lo;
          out.hi = hi;
        } else {
          out.lo = -hi;
          out.hi = -lo;
        }
        return out;
      }
    } else if (spread == 0) {
      // Point enclosure hitting a root exactly.
      out.kind = SignedValue::Kind::ExactZero;
      return out;
    }
    if (stream && w >= budget_bits) {
      out.kind = SignedValue::Kind::Undecided;
      return out;
    }
    if (w > kHardLimitBits) throw Undecided("evaluate: precision limit reached");
    w = stream ? std::min(2 * w, budget_bits) : 2 * w;
  }
}

AbsValueResult RealOracle::abs_value(const IntegerPolynomial& p, unsigned rel_bits,
                                     unsigned budget_bits) {
  if (p.is_zero()) throw InvalidArgument("eval_abs_enclosure: zero polynomial");
  const SignedValue v = evaluate(p, rel_bits, budget_bits);
  switch (v.kind) {
    case SignedValue::Kind::ExactZero:
      return AbsValueResult::exact_zero();
    case SignedValue::Kind::Undecided:
      return AbsValueResult::undecided();
    case SignedValue::Kind::Interval:
      break;
  }
  if (v.lo > 0) return AbsValueResult::positive(v.lo, v.hi);
  return AbsValueResult::positive(-v.hi, -v.lo);
}

std::optional<int> RealOracle::compare(const Rational& x, unsigned budget_bits) {
  const IntegerPolynomial p(std::vector<Integer>{-x.get_num(), x.get_den()}, 1);
  const SignedValue v = evaluate(p, 1, budget_bits);
  if (v.kind == SignedValue::Kind::Undecided) return std::nullopt;
  return v.sign();
}

Enclosure enclose(const RealSpec& spec, unsigned bits) {
  if (bits < 1) throw InvalidArgument("enclose: bits must be >= 1");
  return compute_enclosure(spec, bits);
}

AbsValueResult eval_abs_enclosure(const IntegerPolynomial& p, const RealSpec& spec,
                                  unsigned rel_bits, unsigned budget_bits) {
  RealOracle oracle(spec);
  return oracle.abs_value(p, rel_bits, budget_bits);
}

std::vector<Enclosure> power_enclosures(const RealSpec& spec, unsigned n, unsigned bits) {
  RealOracle oracle(spec);
  return oracle.powers(n, bits);
}

RealSpec apply_mobius(const RealSpec& spec, const Integer& m, const Integer& r,
                      unsigned budget_bits) {
  if (m < 1) throw InvalidArgument("apply_mobius: M must be positive");
  if (auto q = spec.exact_rational()) {
    if (*q == r) throw InvalidArgument("apply_mobius: xi equals the node " + r.get_str());
    Rational image = 1 / (m * (*q - r));
    return RealSpec::rational(std::move(image));
  }
  if (auto alg = spec.algebraic_form()) {
    const detail::QPoly q = detail::to_qpoly(alg->minimal_polynomial);
    Rational lo = alg->lo, hi = alg->hi;
    const Rational node(r);
    if (lo <= node && node <= hi) {
      if (detail::sign_at(q, node) == 0) {
        throw InvalidArgument("apply_mobius: xi equals the node " + r.get_str());
      }
      const int s_lo = detail::sign_at(q, lo);
      while (lo <= node && node <= hi) {
        Rational mid = (lo + hi) / 2;
        const int s = detail::sign_at(q, mid);
        if (s == 0) {
          lo = hi = mid;  // rational root; the node differs from it
          break;
        }
        (s == s_lo ? lo : hi) = mid;
      }
    }
    const unsigned d = static_cast<unsigned>(alg->minimal_polynomial.size() - 1);
    const IntegerPolynomial mp(alg->minimal_polynomial, d);
    std::vector<Integer> image = detail::primitive_part(lead_lift_transform(mp, m, r, d).coefficients());
    const Rational a = 1 / (m * (lo - node)), b = 1 / (m * (hi - node));
    if (lo == hi) {
      return RealSpec::rational(a);
    }
    return RealSpec::algebraic(std::move(image), std::min(a, b), std::max(a, b));
  }
  if (spec.is_stream()) {
    RealOracle oracle(spec);
    const auto cmp = oracle.compare(Rational(r), budget_bits);
    if (!cmp) {
      throw Undecided("apply_mobius: cannot exclude xi = " + r.get_str() + " within " +
                      std::to_string(budget_bits) + " bits");
    }
    if (*cmp == 0) throw InvalidArgument("apply_mobius: xi equals the node " + r.get_str());
  }
  return RealSpec::mobius_image(spec, m, r);
}

}  // namespace leadlift
