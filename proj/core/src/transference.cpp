#include "leadlift/transference.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "leadlift/detail/cursor.hpp"
#include "leadlift/error.hpp"
#include "leadlift/oracle.hpp"

namespace leadlift {

namespace {

Integer eval_integer(const IntegerPolynomial& p, const Integer& x) {
  const auto& c = p.coefficients();
  Integer acc = 0;
  for (std::size_t j = c.size(); j-- > 0;) acc = acc * x + c[j];
  return acc;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

Integer ceil_of(const Rational& q) {
  Integer z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z;
}

Integer power(const Integer& base, unsigned e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

std::size_t max_row(const std::vector<std::vector<Rational>>& rows, Rational* best_sum) {
  std::size_t best = 0;
  Rational best_value = -1;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    Rational s = 0;
    for (const auto& x : rows[j]) s += abs(x);
    if (s > best_value) {
      best_value = s;
      best = j;
    }
  }
  if (best_sum) *best_sum = best_value;
  return best;
}

Rational shift_row_sum(const Integer& r, unsigned j, unsigned k) {
  Integer sum = 0;
  const Integer a = abs(r);
  for (unsigned m = j; m <= k; ++m) sum += binomial(m, j) * power(a, m - j);
  return Rational(sum);
}

}  // namespace

NodeSet::NodeSet(std::vector<Integer> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw InvalidArgument("NodeSet: at least one node is required");
  std::set<Integer> seen;
  for (const auto& r : nodes_) {
    if (!seen.insert(r).second) {
      throw InvalidArgument("NodeSet: node " + r.get_str() + " repeated");
    }
  }
}

NodeSet NodeSet::standard(unsigned k) {
  std::vector<Integer> nodes;
  for (unsigned i = 0; i <= k; ++i) nodes.emplace_back(i);
  return NodeSet(std::move(nodes));
}

NodeSet NodeSet::parse(std::string_view text) {
  detail::Cursor c(text);
  std::vector<Integer> nodes{c.integer()};
  while (c.consume(',')) nodes.push_back(c.integer());
  c.expect_end();
  try {
    return NodeSet(std::move(nodes));
  } catch (const InvalidArgument& e) {
    c.fail_at(0, e.what());
  }
}

std::string NodeSet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i) out += ',';
    out += nodes_[i].get_str();
  }
  return out;
}

std::vector<std::vector<Rational>> inverse_vandermonde(const NodeSet& nodes) {
  const std::size_t n = nodes.size();
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    Integer x = 1;
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = x;
      x *= nodes[i];
    }
    a[i][n + i] = 1;
  }
  // Fraction-free Gauss-Jordan: every division below is exact and the left
  // block ends as det(V) I, so the right block is det(V) V^-1.
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) throw std::logic_error("inverse_vandermonde: singular matrix");
      std::swap(a[k], a[p]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const Integer aik = a[i][k];
      for (std::size_t j = 0; j < 2 * n; ++j) {
        Integer t = a[k][k] * a[i][j] - aik * a[k][j];
        if (!mpz_divisible_p(t.get_mpz_t(), prev.get_mpz_t())) {
          throw std::logic_error("inverse_vandermonde: inexact fraction-free step");
        }
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) inv[j][i] = make_rational(a[j][n + i], prev);
  }
  return inv;
}

Rational compute_C1(const NodeSet& nodes) {
  Rational c1;
  max_row(inverse_vandermonde(nodes), &c1);
  return c1;
}

Rational compute_C2(const NodeSet& nodes) {
  const unsigned k = nodes.k();
  Rational best = 0;
  for (const auto& r : nodes.nodes()) {
    for (unsigned j = 0; j <= k; ++j) best = std::max(best, shift_row_sum(r, j, k));
  }
  return best;
}

Integer compute_M(const NodeSet& nodes) {
  const Rational product = compute_C1(nodes) * compute_C2(nodes);
  return std::max(Integer(1), ceil_of(product));
}

TransferenceConstants compute_constants(const NodeSet& nodes) {
  TransferenceConstants c;
  c.c1 = compute_C1(nodes);
  c.c2 = compute_C2(nodes);
  c.m = std::max(Integer(1), ceil_of(c.c1 * c.c2));
  return c;
}

IntegerPolynomial c1_extremal_polynomial(const NodeSet& nodes) {
  const auto inv = inverse_vandermonde(nodes);
  const std::size_t row = max_row(inv, nullptr);
  const std::size_t n = nodes.size();
  std::vector<Rational> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = inv[row][i] < 0 ? -1 : 1;
  std::vector<Rational> coeffs(n, Rational(0));
  Integer den = 1;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) coeffs[j] += inv[j][i] * values[i];
    den = ::lcm(den, coeffs[j].get_den());
  }
  std::vector<Integer> out;
  for (const auto& c : coeffs) out.emplace_back(c.get_num() * (den / c.get_den()));
  return IntegerPolynomial(std::move(out), nodes.k());
}

ShiftExtremal c2_extremal_polynomial(const NodeSet& nodes) {
  const unsigned k = nodes.k();
  Rational best = -1;
  Integer best_r = 0;
  unsigned best_j = 0;
  for (const auto& r : nodes.nodes()) {
    for (unsigned j = 0; j <= k; ++j) {
      const Rational s = shift_row_sum(r, j, k);
      if (s > best) {
        best = s;
        best_r = r;
        best_j = j;
      }
    }
  }
  std::vector<Integer> c(k + 1, Integer(0));
  for (unsigned m = best_j; m <= k; ++m) c[m] = (best_r < 0 && (m - best_j) % 2 == 1) ? -1 : 1;
  return ShiftExtremal{IntegerPolynomial(std::move(c), k), best_r};
}

std::size_t select_index(const IntegerPolynomial& p, const NodeSet& nodes,
                         std::span<const std::size_t> excluded) {
  if (excluded.empty()) return Transference(nodes).select_index(p);
  if (p.is_zero()) throw InvalidArgument("select_index: zero polynomial");
  std::optional<std::size_t> best;
  Integer best_value = -1;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (std::find(excluded.begin(), excluded.end(), i) != excluded.end()) continue;
    const Integer v = abs(eval_integer(p, nodes[i]));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  if (!best) throw InvalidArgument("select_index: every node index is excluded");
  return *best;
}

Transference::Transference(NodeSet nodes, std::optional<Integer> m)
    : nodes_(std::move(nodes)), constants_(compute_constants(nodes_)) {
  if (m) {
    if (*m < constants_.m) {
      throw InvalidArgument("M = " + m->get_str() + " is below the least admissible value " +
                            constants_.m.get_str());
    }
    m_ = *m;
  } else {
    m_ = constants_.m;
  }
}

std::size_t Transference::select_index(const IntegerPolynomial& p,
                                       std::span<const std::size_t> excluded) const {
  if (p.is_zero()) throw InvalidArgument("select_index: zero polynomial");
  if (p.degree() > static_cast<int>(k())) {
    throw InvalidArgument("select_index: degree exceeds k");
  }
  if (!excluded.empty()) return leadlift::select_index(p, nodes_, excluded);
  std::size_t best = 0;
  Integer best_value = -1;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Integer v = abs(eval_integer(p, nodes_[i]));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  if (Rational(height(p)) > constants_.c1 * best_value) {
    throw std::logic_error("select_index: ||P|| <= C1 |P(r_i)| violated for P = " + p.to_string());
  }
  return best;
}

LiftResult Transference::lift(const IntegerPolynomial& p, const RealSpec& spec) const {
  if (p.is_zero()) throw InvalidArgument("lift: zero polynomial");
  if (p.degree() > static_cast<int>(k())) throw InvalidArgument("lift: degree exceeds k");
  RealOracle oracle(spec);
  std::vector<std::size_t> excluded;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const IntegerPolynomial x_minus_r(std::vector<Integer>{-nodes_[i], 1}, 1);
    if (oracle.is_exact_root(x_minus_r)) excluded.push_back(i);
  }
  if (excluded.size() == nodes_.size()) {
    throw InvalidArgument("lift: xi coincides with every node");
  }
  const std::size_t i = select_index(p, excluded);
  const Integer& r = nodes_[i];
  const unsigned kk = k();
  IntegerPolynomial q = lead_lift_transform(p.with_degree_bound(std::max<unsigned>(kk, p.degree_bound())), m_, r, kk);
  LiftResult out{i, r, q, eval_rational(p, Rational(r)), apply_mobius(spec, m_, r), excluded, false, false, std::nullopt};
  out.leading_dominant = is_leading_dominant(q, kk);
  out.leading_identity = Rational(q.coefficient(kk)) == Rational(power(m_, kk)) * out.node_value;
  if (auto xi = oracle.exact_value()) {
    const Rational xi_i = *out.transformed_spec.exact_rational();
    Rational scale = m_ * xi_i, factor = 1;
    for (unsigned j = 0; j < kk; ++j) factor *= scale;
    out.evaluation_identity = eval_rational(q, xi_i) == factor * eval_rational(p, *xi);
  }
  return out;
}

NormRatioBounds Transference::norm_ratio_bounds() const {
  const Rational mk(power(m_, k()));
  return {mk / constants_.c1, mk * constants_.c2};
}

TransferBoundCheck Transference::check_transfer_bound(const IntegerPolynomial& p,
                                                      const RealSpec& spec,
                                                      unsigned rel_bits) const {
  TransferBoundCheck out;
  const Integer hp = height(p);
  if (hp < 2) throw InvalidArgument("transfer bound: height(P) must be >= 2");
  RealOracle oracle(spec);
  const AbsValueResult ep = oracle.abs_value(p, rel_bits);
  const LiftResult lifted = lift(p, spec);
  RealOracle image(lifted.transformed_spec);
  const AbsValueResult eq = image.abs_value(lifted.lifted, rel_bits);
  if (ep.is_undecided() || eq.is_undecided()) {
    out.undecided = true;
    return out;
  }
  if (ep.is_zero() || eq.is_zero()) {
    out.both_exact_zero = ep.is_zero() && eq.is_zero();
    out.violated = !out.both_exact_zero;
    out.exponent_p = exponent_interval(ep, hp);
    out.exponent_q = exponent_interval(eq, height(lifted.lifted));
    return out;
  }
  out.exponent_p = exponent_interval(ep, hp);
  out.exponent_q = exponent_interval(eq, height(lifted.lifted));
  out.difference = abs(sub(out.exponent_q, out.exponent_p));

  // log(M |xi_i|)
  Enclosure xi = image.enclose(kInitialWorkingBits);
  for (unsigned bits = 2 * kInitialWorkingBits; xi.lo <= 0 && xi.hi >= 0; bits *= 2) {
    xi = image.enclose(bits);
  }
  Rational abs_lo = abs(xi.lo), abs_hi = abs(xi.hi);
  if (abs_lo > abs_hi) std::swap(abs_lo, abs_hi);
  const ExponentInterval log_scaled = log_interval(m_ * abs_lo, m_ * abs_hi);

  const double k_d = static_cast<double>(k());
  const ExponentInterval k_log_m = scale(log_interval(Rational(m_), Rational(m_)), k_d);
  const ExponentInterval log_c1 = log_interval(constants_.c1, constants_.c1);
  const ExponentInterval log_c2 = log_interval(constants_.c2, constants_.c2);
  const ExponentInterval distortion = max(abs(sub(k_log_m, log_c1)), abs(add(k_log_m, log_c2)));
  const ExponentInterval b =
      add(scale(abs(log_scaled), k_d), mul(abs(out.exponent_p), distortion));
  out.bound = div(b, log_interval(Rational(hp), Rational(hp)));
  out.violated = out.difference.lo > out.bound.hi;
  out.margin = out.bound.lo - out.difference.hi;
  return out;
}

LiftResult lift(const IntegerPolynomial& p, const NodeSet& nodes, const Integer& m,
                const RealSpec& spec) {
  return Transference(nodes, m).lift(p, spec);
}

NormRatioBounds norm_ratio_bounds(const NodeSet& nodes, const Integer& m) {
  return Transference(nodes, m).norm_ratio_bounds();
}

IndexHistogram sequence_index_statistics(std::span<const IntegerPolynomial> witnesses,
                                         const NodeSet& nodes) {
  const Transference t(nodes);
  IndexHistogram h;
  h.counts.assign(nodes.size(), 0);
  for (const auto& w : witnesses) ++h.counts[t.select_index(w)];
  h.modal_index = static_cast<std::size_t>(
      std::max_element(h.counts.begin(), h.counts.end()) - h.counts.begin());
  return h;
}

}  // namespace leadlift
