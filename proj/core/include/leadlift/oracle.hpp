#pragma once

#include <map>
#include <optional>
#include <vector>

#include "leadlift/detail/rational_poly.hpp"
#include "leadlift/polynomial.hpp"
#include "leadlift/rational.hpp"
#include "leadlift/real_spec.hpp"

namespace leadlift {

inline constexpr unsigned kInitialWorkingBits = 64;
inline constexpr unsigned kDefaultBudgetBits = 4096;
// Refinement limit for inputs whose values are provably nonzero.
inline constexpr unsigned kHardLimitBits = 1u << 20;

// Rigorous rational interval around a real: hi - lo <= 2^-precision_bits.
struct Enclosure {
  Rational lo;
  Rational hi;
  unsigned precision_bits = 0;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const Enclosure& e) const { return lo <= e.lo && e.hi <= hi; }
};

// Outcome of bounding |P(xi)|.
struct AbsValueResult {
  enum class Kind { PositiveInterval, ExactZero, Undecided };

  Kind kind = Kind::Undecided;
  Rational lo;  // PositiveInterval: 0 < lo <= hi
  Rational hi;
  bool budget_exhausted = false;

  static AbsValueResult positive(Rational lo, Rational hi);
  static AbsValueResult exact_zero();
  static AbsValueResult undecided();

  bool is_positive() const noexcept { return kind == Kind::PositiveInterval; }
  bool is_zero() const noexcept { return kind == Kind::ExactZero; }
  bool is_undecided() const noexcept { return kind == Kind::Undecided; }

  // |c| * value, exact.
  AbsValueResult scaled(const Integer& c) const;
};

// Signed counterpart: lo..hi does not contain 0 when kind == Interval.
struct SignedValue {
  enum class Kind { Interval, ExactZero, Undecided };
  Kind kind = Kind::Undecided;
  Rational lo;
  Rational hi;

  int sign() const { return kind == Kind::ExactZero ? 0 : (lo > 0 ? 1 : -1); }
};

// Caching evaluator for a single real. Results are pure functions of the
// arguments; the cache only saves work. Not thread-safe: use one per worker.
class RealOracle {
 public:
  explicit RealOracle(RealSpec spec);

  const RealSpec& spec() const noexcept { return spec_; }
  const std::optional<Rational>& exact_value() const noexcept { return exact_; }

  const Enclosure& enclose(unsigned bits);
  std::vector<Enclosure> powers(unsigned n, unsigned bits);

  SignedValue evaluate(const IntegerPolynomial& p, unsigned rel_bits,
                       unsigned budget_bits = kDefaultBudgetBits);
  AbsValueResult abs_value(const IntegerPolynomial& p, unsigned rel_bits,
                           unsigned budget_bits = kDefaultBudgetBits);

  // Sign of xi - x, or nullopt when undecided within the budget.
  std::optional<int> compare(const Rational& x, unsigned budget_bits = kDefaultBudgetBits);

  // P(xi) == 0, proven by exact algebra (exact and algebraic variants only).
  bool is_exact_root(const IntegerPolynomial& p) const;

 private:
  RealSpec spec_;
  std::optional<Rational> exact_;
  std::optional<AlgebraicValue> algebraic_;
  detail::QPoly minimal_;
  std::map<unsigned, Enclosure> cache_;
};

// Interval of width <= 2^-bits containing the real. Deterministic.
Enclosure enclose(const RealSpec& spec, unsigned bits);

// |P(xi)| with hi/lo <= 1 + 2^-rel_bits, ExactZero when P(xi) = 0 is proven,
// Undecided only for digit streams once budget_bits is exhausted.
AbsValueResult eval_abs_enclosure(const IntegerPolynomial& p, const RealSpec& spec,
                                  unsigned rel_bits, unsigned budget_bits = kDefaultBudgetBits);

// Enclosures of xi^1 .. xi^n, each of width <= 2^-bits.
std::vector<Enclosure> power_enclosures(const RealSpec& spec, unsigned n, unsigned bits);

// 1 / (M (xi - r)). Exact variants stay exact (rationals map to rationals,
// algebraic numbers and periodic continued fractions to algebraic numbers);
// the rest become a composed MobiusImage. Throws InvalidArgument when
// xi = r is proven and Undecided when equality cannot be excluded.
RealSpec apply_mobius(const RealSpec& spec, const Integer& m, const Integer& r,
                      unsigned budget_bits = kDefaultBudgetBits);

}  // namespace leadlift
