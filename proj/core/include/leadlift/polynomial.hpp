#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leadlift/rational.hpp"

namespace leadlift {

// Dense integer polynomial of bounded degree. Coefficients are stored
// constant term first and the storage length is always degree_bound + 1.
class IntegerPolynomial {
 public:
  // The zero polynomial of degree bound 0.
  IntegerPolynomial();

  // Shorter coefficient lists are padded with zeros; nonzero coefficients
  // beyond the degree bound are rejected.
  IntegerPolynomial(std::vector<Integer> coefficients, unsigned degree_bound);
  IntegerPolynomial(std::initializer_list<long> coefficients, unsigned degree_bound);
  static IntegerPolynomial from_int64(std::span<const std::int64_t> coefficients,
                                      unsigned degree_bound);

  // "1,4" is 4x + 1.
  static IntegerPolynomial parse(std::string_view text, unsigned degree_bound);

  unsigned degree_bound() const noexcept { return static_cast<unsigned>(coeffs_.size() - 1); }
  const std::vector<Integer>& coefficients() const noexcept { return coeffs_; }
  const Integer& operator[](std::size_t j) const { return coeffs_[j]; }

  // Coefficient of x^j; zero above the degree bound.
  Integer coefficient(unsigned j) const;

  // -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const;
  Integer content() const;
  bool is_primitive() const { return content() == 1; }

  // Same coefficients under a different (not smaller than degree) bound.
  IntegerPolynomial with_degree_bound(unsigned degree_bound) const;

  std::string to_string() const;

  friend bool operator==(const IntegerPolynomial& a, const IntegerPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<Integer> coeffs_;
};

// Largest absolute value of the coefficients; 0 for the zero polynomial.
Integer height(const IntegerPolynomial& p);

// Exact Horner evaluation.
Rational eval_rational(const IntegerPolynomial& p, const Rational& q);

// S(y) = P(y + r).
IntegerPolynomial shift(const IntegerPolynomial& p, const Integer& r);

// Q(x) = (Mx)^k P(1/(Mx) + r). The coefficient of x^(k-j) in Q is
// s_j M^(k-j) where s = shift(P, r), so c_k(Q) = M^k P(r).
IntegerPolynomial lead_lift_transform(const IntegerPolynomial& p, const Integer& m,
                                      const Integer& r, unsigned k);

// |c_k(P)| == height(P). Throws InvalidArgument on the zero polynomial.
bool is_leading_dominant(const IntegerPolynomial& p, unsigned k);

}  // namespace leadlift
