#include <gtest/gtest.h>

#include <random>

#include "leadlift/error.hpp"
#include "leadlift/transference.hpp"
#include "oracles.hpp"

namespace leadlift {
namespace {

std::vector<NodeSet> sample_node_sets() {
  std::vector<NodeSet> sets;
  for (unsigned k = 0; k <= 6; ++k) sets.push_back(NodeSet::standard(k));
  sets.push_back(NodeSet::parse("-1,0,2"));
  sets.push_back(NodeSet::parse("3,-2"));
  sets.push_back(NodeSet::parse("-2,-1,1,2"));
  return sets;
}

TEST(NodeSet, ParseAndValidate) {
  EXPECT_EQ(NodeSet::parse("0,1,2").nodes(), NodeSet::standard(2).nodes());
  EXPECT_EQ(NodeSet::parse("-1,0,2").to_string(), "-1,0,2");
  EXPECT_EQ(NodeSet::standard(3).k(), 3u);
  EXPECT_THROW(NodeSet::parse("0,0"), ParseError);
  EXPECT_THROW(NodeSet(std::vector<Integer>{0, 0}), InvalidArgument);
  EXPECT_THROW(NodeSet(std::vector<Integer>{}), InvalidArgument);
  EXPECT_THROW(NodeSet::parse("0,a"), ParseError);
}

TEST(Constants, KnownValues) {
  const auto c0 = compute_constants(NodeSet::standard(0));
  EXPECT_EQ(c0.c1, 1);
  EXPECT_EQ(c0.c2, 1);
  EXPECT_EQ(c0.m, 1);
  const auto c1 = compute_constants(NodeSet::standard(1));
  EXPECT_EQ(c1.c1, 2);
  EXPECT_EQ(c1.c2, 2);
  EXPECT_EQ(c1.m, 4);
  const auto c2 = compute_constants(NodeSet::standard(2));
  EXPECT_EQ(c2.c1, 4);
  EXPECT_EQ(c2.c2, 7);
  EXPECT_EQ(c2.m, 28);
}

TEST(Constants, MatchNaiveOracle) {
  for (const auto& nodes : sample_node_sets()) {
    const auto inverse = inverse_vandermonde(nodes);
    EXPECT_EQ(inverse, oracle::naive_inverse_vandermonde(nodes.nodes())) << nodes.to_string();
    const auto c = compute_constants(nodes);
    EXPECT_EQ(c.c1, oracle::naive_c1(nodes.nodes())) << nodes.to_string();
    EXPECT_EQ(c.c2, oracle::naive_c2(nodes.nodes())) << nodes.to_string();
    const Rational product = c.c1 * c.c2;
    EXPECT_GE(Rational(c.m), product);
    EXPECT_GE(c.m, 1);
    EXPECT_TRUE(c.m == 1 || Rational(c.m - 1) < product) << nodes.to_string();
  }
}

TEST(Constants, ExtremalPolynomialsAttainTheBounds) {
  for (const auto& nodes : sample_node_sets()) {
    const auto c = compute_constants(nodes);
    const auto p1 = c1_extremal_polynomial(nodes);
    Integer at_nodes = 0;
    for (const auto& r : nodes.nodes()) {
      const Rational v = abs(eval_rational(p1, Rational(r)));
      if (v > at_nodes) at_nodes = v.get_num();
    }
    EXPECT_EQ(Rational(height(p1)), c.c1 * at_nodes) << nodes.to_string();

    const auto p2 = c2_extremal_polynomial(nodes);
    EXPECT_EQ(Rational(height(shift(p2.polynomial, p2.node))), c.c2 * height(p2.polynomial))
        << nodes.to_string();
  }
}

TEST(SelectIndex, PicksLargestNodeValueLowestIndexOnTies) {
  const auto nodes = NodeSet::standard(2);
  // x^2 - 2 takes -2, -1, 2 at 0, 1, 2.
  const IntegerPolynomial p({-2, 0, 1}, 2);
  EXPECT_EQ(select_index(p, nodes), 0u);
  const std::size_t skip0[] = {0};
  EXPECT_EQ(select_index(p, nodes, skip0), 2u);
  const std::size_t all[] = {0, 1, 2};
  EXPECT_THROW(select_index(p, nodes, all), InvalidArgument);
  EXPECT_EQ(select_index(IntegerPolynomial({-11, 100}, 1), NodeSet::standard(1)), 1u);
  EXPECT_THROW(select_index(IntegerPolynomial({0}, 1), NodeSet::standard(1)), InvalidArgument);
}

TEST(Lift, Examples) {
  const Transference t(NodeSet::standard(1));
  EXPECT_EQ(t.m(), 4);
  const auto one = t.lift(IntegerPolynomial({1}, 1), RealSpec::parse("rat:5"));
  EXPECT_EQ(one.lifted, IntegerPolynomial({0, 4}, 1));
  EXPECT_TRUE(one.leading_dominant);
  EXPECT_TRUE(one.leading_identity);
  ASSERT_TRUE(one.evaluation_identity.has_value());
  EXPECT_TRUE(*one.evaluation_identity);

  const auto w = t.lift(IntegerPolynomial({-11, 100}, 1), RealSpec::liouville(10));
  EXPECT_EQ(w.index, 1u);
  EXPECT_EQ(w.node_value, 89);
  EXPECT_EQ(w.lifted, IntegerPolynomial({100, 356}, 1));
  EXPECT_TRUE(w.leading_dominant);
  EXPECT_FALSE(w.evaluation_identity.has_value());
}

TEST(Lift, AlgebraicRootMapsToRoot) {
  const Transference t(NodeSet::standard(2));
  const auto sqrt2 = RealSpec::parse("alg:-2,0,1:1,2");
  const IntegerPolynomial p({-2, 0, 1}, 2);
  const auto result = t.lift(p, sqrt2);
  EXPECT_EQ(result.index, 0u);
  EXPECT_TRUE(eval_abs_enclosure(result.lifted, result.transformed_spec, 32).is_zero());
}

TEST(Lift, ExcludesNodesEqualToXi) {
  const Transference t(NodeSet::standard(1));
  // P = x - 1 is largest at node 0, but xi = 0 is a node.
  const auto result = t.lift(IntegerPolynomial({-1, 1}, 1), RealSpec::parse("rat:0"));
  EXPECT_EQ(result.excluded, std::vector<std::size_t>{0});
  EXPECT_EQ(result.index, 1u);
  EXPECT_FALSE(result.leading_dominant);
  EXPECT_THROW(Transference(NodeSet::standard(0)).lift(IntegerPolynomial({3}, 0),
                                                       RealSpec::parse("rat:0")),
               InvalidArgument);
}

TEST(Lift, UniversalityOnRandomPolynomials) {
  std::mt19937_64 rng(20261018);
  for (const auto& nodes : sample_node_sets()) {
    const Transference t(nodes);
    const auto& c = t.constants();
    for (int trial = 0; trial < 2000; ++trial) {
      auto p = oracle::random_polynomial(rng, nodes.k(), 1000000);
      if (p.is_zero()) continue;
      const std::size_t i = t.select_index(p);
      const Rational value = eval_rational(p, Rational(nodes[i]));
      ASSERT_LE(Rational(height(p)), c.c1 * abs(value));
      const auto q = lead_lift_transform(p, t.m(), nodes[i], nodes.k());
      ASSERT_EQ(q.coefficients(), oracle::naive_lead_lift(p.coefficients(), t.m(), nodes[i], nodes.k()));
      ASSERT_TRUE(is_leading_dominant(q, nodes.k())) << p.to_string() << " " << nodes.to_string();
      Integer mk;
      mpz_pow_ui(mk.get_mpz_t(), t.m().get_mpz_t(), nodes.k());
      ASSERT_EQ(Rational(q.coefficient(nodes.k())), mk * value);
    }
  }
}

TEST(Lift, EvaluationIdentityOnRandomRationals) {
  std::mt19937_64 rng(99);
  for (unsigned k = 1; k <= 4; ++k) {
    const Transference t(NodeSet::standard(k));
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = oracle::random_polynomial(rng, k, 1000);
      if (p.is_zero()) continue;
      const Rational xi = oracle::random_rational(rng, 10000, 1000);
      bool is_node = false;
      for (const auto& r : t.nodes().nodes()) is_node |= xi == Rational(r);
      if (is_node) continue;
      const auto result = t.lift(p, RealSpec::rational(xi));
      ASSERT_TRUE(result.evaluation_identity.has_value());
      EXPECT_TRUE(*result.evaluation_identity);
      const Rational xi_i = 1 / (t.m() * (xi - result.node));
      EXPECT_EQ(*result.transformed_spec.exact_rational(), xi_i);
    }
  }
}

TEST(NormRatio, Bounds) {
  const auto b1 = norm_ratio_bounds(NodeSet::standard(1), 4);
  EXPECT_EQ(b1.lower, 2);
  EXPECT_EQ(b1.upper, 8);
  const auto b0 = norm_ratio_bounds(NodeSet::standard(0), 1);
  EXPECT_EQ(b0.lower, 1);
  EXPECT_EQ(b0.upper, 1);
  const auto b2 = Transference(NodeSet::standard(2)).norm_ratio_bounds();
  EXPECT_EQ(b2.lower, 196);
  EXPECT_EQ(b2.upper, 5488);
}

TEST(NormRatio, HoldsOnRandomLifts) {
  std::mt19937_64 rng(5);
  for (unsigned k = 1; k <= 4; ++k) {
    const Transference t(NodeSet::standard(k));
    const auto bounds = t.norm_ratio_bounds();
    for (int trial = 0; trial < 500; ++trial) {
      const auto p = oracle::random_polynomial(rng, k, 10000);
      if (p.is_zero()) continue;
      const auto i = t.select_index(p);
      const auto q = lead_lift_transform(p, t.m(), t.nodes()[i], k);
      const Rational ratio = make_rational(height(q), height(p));
      EXPECT_LE(bounds.lower, ratio);
      EXPECT_LE(ratio, bounds.upper);
    }
  }
}

TEST(Transference, RejectsSmallM) {
  EXPECT_THROW(Transference(NodeSet::standard(1), Integer(3)), InvalidArgument);
  EXPECT_NO_THROW(Transference(NodeSet::standard(1), Integer(5)));
  EXPECT_EQ(Transference(NodeSet::standard(1), Integer(5)).m(), 5);
}

TEST(TransferBound, NotViolatedOnRandomPolynomials) {
  std::mt19937_64 rng(17);
  const RealSpec specs[] = {RealSpec::euler(), RealSpec::liouville(10),
                            RealSpec::parse("cf:1;1;per=1"), RealSpec::random_digits(12345)};
  for (unsigned k = 1; k <= 3; ++k) {
    const Transference t(NodeSet::standard(k));
    for (const auto& spec : specs) {
      for (int trial = 0; trial < 40; ++trial) {
        const auto p = oracle::random_polynomial(rng, k, 200);
        if (height(p) < 2) continue;
        const auto check = t.check_transfer_bound(p, spec);
        EXPECT_FALSE(check.violated) << p.to_string() << " " << spec.to_string();
        if (!check.undecided && !check.both_exact_zero) {
          EXPECT_LE(check.difference.lo, check.bound.hi);
        }
      }
    }
  }
}

TEST(TransferBound, ExactZeroOnBothSides) {
  const Transference t(NodeSet::standard(2));
  const auto check = t.check_transfer_bound(IntegerPolynomial({-2, 0, 1}, 2),
                                            RealSpec::parse("alg:-2,0,1:1,2"));
  EXPECT_TRUE(check.both_exact_zero);
  EXPECT_FALSE(check.violated);
}

TEST(IndexStatistics, CountsAndModalIndex) {
  const auto nodes = NodeSet::standard(1);
  const std::vector<IntegerPolynomial> ws{IntegerPolynomial({-11, 100}, 1),
                                          IntegerPolynomial({1, 1}, 1),
                                          IntegerPolynomial({5, -1}, 1)};
  const auto h = sequence_index_statistics(ws, nodes);
  EXPECT_EQ(h.counts, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(h.modal_index, 1u);

  const std::vector<IntegerPolynomial> tied{IntegerPolynomial({5, -1}, 1),
                                            IntegerPolynomial({-11, 100}, 1)};
  const auto t = sequence_index_statistics(tied, nodes);
  EXPECT_EQ(t.counts, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(t.modal_index, 0u);
}

}  // namespace
}  // namespace leadlift
