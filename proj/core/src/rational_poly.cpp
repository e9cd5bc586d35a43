#include "leadlift/detail/rational_poly.hpp"

#include "leadlift/error.hpp"

namespace leadlift::detail {

QPoly to_qpoly(const IntegerPolynomial& p) { return to_qpoly(p.coefficients()); }

QPoly to_qpoly(const std::vector<Integer>& coeffs) {
  QPoly q(coeffs.begin(), coeffs.end());
  trim(q);
  return q;
}

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t j = 1; j < p.size(); ++j) d.push_back(p[j] * static_cast<long>(j));
  trim(d);
  return d;
}

QPoly remainder(const QPoly& a, const QPoly& b) {
  if (b.empty()) throw InvalidArgument("polynomial division by zero");
  QPoly r = a;
  trim(r);
  const std::size_t db = b.size() - 1;
  while (!r.empty() && r.size() - 1 >= db) {
    const Rational factor = r.back() / b.back();
    const std::size_t offset = r.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) r[offset + j] -= factor * b[j];
    r.pop_back();  // leading term cancels exactly
    trim(r);
  }
  return r;
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

Rational evaluate(const QPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t j = p.size(); j-- > 0;) acc = acc * x + p[j];
  return acc;
}

int sign_at(const QPoly& p, const Rational& x) { return sgn(evaluate(p, x)); }

std::vector<QPoly> sturm_chain(const QPoly& p) {
  std::vector<QPoly> chain;
  QPoly a = p;
  trim(a);
  if (a.empty()) return chain;
  chain.push_back(a);
  QPoly b = derivative(a);
  while (!b.empty()) {
    chain.push_back(b);
    QPoly r = remainder(chain[chain.size() - 2], b);
    for (auto& c : r) c = -c;
    b = std::move(r);
  }
  return chain;
}

namespace {
int sign_variations(const std::vector<QPoly>& chain, const Rational& x) {
  int variations = 0;
  int last = 0;
  for (const auto& q : chain) {
    const int s = sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}
}  // namespace

int count_roots(const std::vector<QPoly>& chain, const Rational& lo, const Rational& hi) {
  if (chain.empty()) throw InvalidArgument("Sturm count of the zero polynomial");
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

std::vector<Integer> primitive_part(const QPoly& p) {
  Integer den = 1;
  for (const auto& c : p) den = ::lcm(den, c.get_den());
  std::vector<Integer> out;
  out.reserve(p.size());
  for (const auto& c : p) out.emplace_back(c.get_num() * (den / c.get_den()));
  return primitive_part(std::move(out));
}

std::vector<Integer> primitive_part(std::vector<Integer> p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  Integer g = 0;
  for (const auto& c : p) g = ::gcd(g, c);
  if (g == 0) return p;
  if (p.back() < 0) g = -g;
  for (auto& c : p) c /= g;
  return p;
}

}  // namespace leadlift::detail
