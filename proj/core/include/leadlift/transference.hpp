#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leadlift/exponent_interval.hpp"
#include "leadlift/polynomial.hpp"
#include "leadlift/rational.hpp"
#include "leadlift/real_spec.hpp"

namespace leadlift {

// Distinct integer interpolation nodes r_0, ..., r_k.
class NodeSet {
 public:
  explicit NodeSet(std::vector<Integer> nodes);
  // r_i = i for i = 0..k.
  static NodeSet standard(unsigned k);
  // "0,1,2"
  static NodeSet parse(std::string_view text);

  unsigned k() const noexcept { return static_cast<unsigned>(nodes_.size() - 1); }
  std::size_t size() const noexcept { return nodes_.size(); }
  const Integer& operator[](std::size_t i) const { return nodes_[i]; }
  const std::vector<Integer>& nodes() const noexcept { return nodes_; }
  std::string to_string() const;

 private:
  std::vector<Integer> nodes_;
};

struct TransferenceConstants {
  Rational c1;  // ||P|| <= c1 max_i |P(r_i)|
  Rational c2;  // max_i ||P(x + r_i)|| <= c2 ||P||
  Integer m;    // least integer >= max(1, c1 c2)
};

// Exact inverse of V[i][j] = r_i^j by fraction-free Gauss-Jordan elimination.
// Row j of the result maps node values to the coefficient of x^j.
std::vector<std::vector<Rational>> inverse_vandermonde(const NodeSet& nodes);

// Maximum absolute row sum of the inverse Vandermonde matrix.
Rational compute_C1(const NodeSet& nodes);
// max over nodes r and rows j of sum_{m >= j} binom(m, j) |r|^(m-j).
Rational compute_C2(const NodeSet& nodes);
Integer compute_M(const NodeSet& nodes);
TransferenceConstants compute_constants(const NodeSet& nodes);

// Integer polynomial with ||P|| = C1 max_i |P(r_i)|, built from the sign
// pattern of the extremal inverse-Vandermonde row.
IntegerPolynomial c1_extremal_polynomial(const NodeSet& nodes);

struct ShiftExtremal {
  IntegerPolynomial polynomial;  // ||shift(P, node)|| = C2 ||P||
  Integer node;
};
ShiftExtremal c2_extremal_polynomial(const NodeSet& nodes);

// Smallest non-excluded index maximizing |P(r_i)|.
std::size_t select_index(const IntegerPolynomial& p, const NodeSet& nodes,
                         std::span<const std::size_t> excluded = {});

struct LiftResult {
  std::size_t index = 0;
  Integer node;
  IntegerPolynomial lifted;    // Q
  Rational node_value;         // P(r_i)
  RealSpec transformed_spec;   // xi_i = 1 / (M (xi - r_i))
  std::vector<std::size_t> excluded;
  bool leading_dominant = false;          // |c_k(Q)| = ||Q||
  bool leading_identity = false;          // c_k(Q) = M^k P(r_i)
  std::optional<bool> evaluation_identity;  // Q(xi_i) = (M xi_i)^k P(xi), rational xi only
};

struct NormRatioBounds {
  Rational lower;  // M^k / C1
  Rational upper;  // M^k C2
};

struct IndexHistogram {
  std::vector<std::size_t> counts;  // one slot per node
  std::size_t modal_index = 0;      // count ties break low
};

// |e_Q - e_P| against B / log||P|| with
//   B = k |log(M |xi_i|)| + |e_P| max(|k log M - log C1|, k log M + log C2).
struct TransferBoundCheck {
  ExponentInterval exponent_p;
  ExponentInterval exponent_q;
  ExponentInterval difference;  // |e_Q - e_P|
  ExponentInterval bound;       // B / log||P||
  bool both_exact_zero = false;
  bool violated = false;        // proven: difference.lo > bound.hi
  bool undecided = false;
  double margin = 0.0;          // bound.lo - difference.hi
};

// Constants computed once for a node set; immutable and shareable.
class Transference {
 public:
  explicit Transference(NodeSet nodes, std::optional<Integer> m = std::nullopt);

  const NodeSet& nodes() const noexcept { return nodes_; }
  unsigned k() const noexcept { return nodes_.k(); }
  const TransferenceConstants& constants() const noexcept { return constants_; }
  const Integer& m() const noexcept { return m_; }

  // Throws std::logic_error if ||P|| <= C1 |P(r_i)| fails without exclusions.
  std::size_t select_index(const IntegerPolynomial& p,
                           std::span<const std::size_t> excluded = {}) const;
  LiftResult lift(const IntegerPolynomial& p, const RealSpec& spec) const;
  NormRatioBounds norm_ratio_bounds() const;
  TransferBoundCheck check_transfer_bound(const IntegerPolynomial& p, const RealSpec& spec,
                                          unsigned rel_bits = 32) const;

 private:
  NodeSet nodes_;
  TransferenceConstants constants_;
  Integer m_;
};

// Free-function forms of the above.
LiftResult lift(const IntegerPolynomial& p, const NodeSet& nodes, const Integer& m,
                const RealSpec& spec);
NormRatioBounds norm_ratio_bounds(const NodeSet& nodes, const Integer& m);
IndexHistogram sequence_index_statistics(std::span<const IntegerPolynomial> witnesses,
                                         const NodeSet& nodes);

}  // namespace leadlift
