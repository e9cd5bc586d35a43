#include "leadlift/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "leadlift/error.hpp"

namespace leadlift {

IntegerPolynomial::IntegerPolynomial() : coeffs_(1) {}

IntegerPolynomial::IntegerPolynomial(std::vector<Integer> coefficients, unsigned degree_bound) {
  if (coefficients.size() > degree_bound + 1u) {
    for (std::size_t j = degree_bound + 1u; j < coefficients.size(); ++j) {
      if (coefficients[j] != 0) {
        throw InvalidArgument("coefficient of x^" + std::to_string(j) +
                              " is nonzero but the degree bound is " +
                              std::to_string(degree_bound));
      }
    }
  }
  coefficients.resize(degree_bound + 1u);
  coeffs_ = std::move(coefficients);
}

IntegerPolynomial::IntegerPolynomial(std::initializer_list<long> coefficients,
                                     unsigned degree_bound)
    : IntegerPolynomial(std::vector<Integer>(coefficients.begin(), coefficients.end()),
                        degree_bound) {}

IntegerPolynomial IntegerPolynomial::from_int64(std::span<const std::int64_t> coefficients,
                                                unsigned degree_bound) {
  std::vector<Integer> c;
  c.reserve(coefficients.size());
  for (std::int64_t v : coefficients) {
    // mpz_class has no int64_t constructor on every platform.
    c.emplace_back(std::to_string(v), 10);
  }
  return IntegerPolynomial(std::move(c), degree_bound);
}

IntegerPolynomial IntegerPolynomial::parse(std::string_view text, unsigned degree_bound) {
  std::vector<Integer> c;
  std::size_t pos = 0;
  const std::string input(text);
  if (text.empty()) throw ParseError(input, 0, "empty coefficient list");
  while (true) {
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == digits) throw ParseError(input, pos, "expected integer coefficient");
    std::string token(text.substr(start, pos - start));
    if (token[0] == '+') token.erase(0, 1);
    c.emplace_back(token, 10);
    if (pos == text.size()) break;
    if (text[pos] != ',') throw ParseError(input, pos, "expected ','");
    ++pos;
  }
  if (c.size() > degree_bound + 1u) {
    for (std::size_t j = degree_bound + 1u; j < c.size(); ++j) {
      if (c[j] != 0) {
        throw ParseError(input, 0,
                         "polynomial degree exceeds bound " + std::to_string(degree_bound));
      }
    }
  }
  return IntegerPolynomial(std::move(c), degree_bound);
}

Integer IntegerPolynomial::coefficient(unsigned j) const {
  return j < coeffs_.size() ? coeffs_[j] : Integer(0);
}

int IntegerPolynomial::degree() const {
  for (int j = static_cast<int>(coeffs_.size()) - 1; j >= 0; --j) {
    if (coeffs_[j] != 0) return j;
  }
  return -1;
}

bool IntegerPolynomial::is_zero() const { return degree() < 0; }

Integer IntegerPolynomial::content() const {
  Integer g = 0;
  for (const auto& c : coeffs_) g = gcd(g, c);
  return g;
}

IntegerPolynomial IntegerPolynomial::with_degree_bound(unsigned degree_bound) const {
  return IntegerPolynomial(coeffs_, degree_bound);
}

std::string IntegerPolynomial::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (j) out += ',';
    out += coeffs_[j].get_str();
  }
  return out;
}

Integer height(const IntegerPolynomial& p) {
  Integer h = 0;
  for (const auto& c : p.coefficients()) {
    if (abs(c) > h) h = abs(c);
  }
  return h;
}

Rational eval_rational(const IntegerPolynomial& p, const Rational& q) {
  const auto& c = p.coefficients();
  Rational acc = 0;
  for (std::size_t j = c.size(); j-- > 0;) {
    acc = acc * q + c[j];
  }
  acc.canonicalize();
  return acc;
}

IntegerPolynomial shift(const IntegerPolynomial& p, const Integer& r) {
  std::vector<Integer> a = p.coefficients();
  const std::size_t n = a.size() - 1;
  if (r != 0) {
    // Repeated synthetic division by (y - r).
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = n; j-- > i;) {
        a[j] += r * a[j + 1];
      }
    }
  }
  return IntegerPolynomial(std::move(a), static_cast<unsigned>(n));
}

IntegerPolynomial lead_lift_transform(const IntegerPolynomial& p, const Integer& m,
                                      const Integer& r, unsigned k) {
  if (p.is_zero()) throw InvalidArgument("lead_lift_transform: zero polynomial");
  if (p.degree() > static_cast<int>(k)) {
    throw InvalidArgument("lead_lift_transform: degree " + std::to_string(p.degree()) +
                          " exceeds k = " + std::to_string(k));
  }
  if (m < 1) throw InvalidArgument("lead_lift_transform: M must be positive");
  const IntegerPolynomial s = shift(p, r);
  std::vector<Integer> q(k + 1u);
  Integer power = 1;  // M^(k-j), built from j = k downwards
  for (unsigned j = k + 1; j-- > 0;) {
    q[k - j] = s.coefficient(j) * power;
    power *= m;
  }
  return IntegerPolynomial(std::move(q), k);
}

bool is_leading_dominant(const IntegerPolynomial& p, unsigned k) {
  if (p.is_zero()) throw InvalidArgument("is_leading_dominant: zero polynomial");
  return abs(p.coefficient(k)) == height(p);
}

}  // namespace leadlift
