#include <gtest/gtest.h>

#include <cmath>

#include "leadlift/error.hpp"
#include "leadlift/exponents.hpp"
#include "oracles.hpp"

namespace leadlift {
namespace {

std::string coords(const ExponentEstimate& e) {
  return e.empty() ? std::string() : e.top_witnesses.front().coords_string();
}

TEST(SearchWindow, Validation) {
  EXPECT_THROW(SearchWindow(1, 10), InvalidArgument);
  EXPECT_THROW(SearchWindow(10, 9), InvalidArgument);
  EXPECT_EQ(SearchWindow(2, 10).to_string(), "[2, 10]");
  const auto tail = SearchWindow::tail(10000);
  EXPECT_EQ(tail.h_min, 100);
  EXPECT_EQ(tail.h_max, 10000);
  EXPECT_EQ(SearchWindow::tail(10).h_min, 4);
}

TEST(ExponentKind, ParseAndPrint) {
  for (auto kind : {ExponentKind::Omega, ExponentKind::OmegaLead, ExponentKind::Lambda}) {
    EXPECT_EQ(parse_exponent_kind(to_string(kind)), kind);
  }
  EXPECT_THROW(parse_exponent_kind("mu"), InvalidArgument);
}

TEST(Score, PolynomialAndPoint) {
  const auto w = score_polynomial(IntegerPolynomial({-11, 100}, 1), RealSpec::liouville(10));
  EXPECT_EQ(w.height, 100);
  EXPECT_NEAR(w.exponent.lo, 2.0, 1e-6);
  EXPECT_LE(w.exponent.lo, w.exponent.hi);
  EXPECT_LE(w.exponent.hi - w.exponent.lo, 1e-6);

  const auto exact = score_polynomial(IntegerPolynomial({-1, 3}, 1), RealSpec::parse("rat:1/3"));
  EXPECT_TRUE(exact.exponent.is_infinite());

  const auto point = score_point({Integer(1), Integer(2)}, RealSpec::parse("cf:1;1;per=1"));
  EXPECT_EQ(point.height, 2);
  EXPECT_NEAR(point.exponent.lo, -std::log(2 - 1.6180339887498949) / std::log(2.0), 1e-6);
  EXPECT_THROW(score_point({Integer(1)}, RealSpec::euler()), InvalidArgument);
  EXPECT_THROW(score_polynomial(IntegerPolynomial({1, 1}, 1), RealSpec::euler()), InvalidArgument);
}

TEST(Estimates, KnownValues) {
  const auto golden = RealSpec::parse("cf:1;1;per=1");
  SearchOptions wide;
  wide.cap = 1e9;
  const auto w1 = omega_estimate(golden, 1, {100, 10000}, false, wide);
  EXPECT_GE(w1.value, 1.0);
  EXPECT_LE(w1.value, 1.2);
  EXPECT_EQ(coords(w1), "-144,89");

  const auto l1 = lambda_estimate(golden, 1, {2, 10000});
  EXPECT_NEAR(l1.value, 1.3885, 1e-3);
  EXPECT_EQ(coords(l1), "1,2");
  const auto l1_tail = lambda_estimate(golden, 1, {100, 10000});
  EXPECT_GE(l1_tail.value, 1.0);
  EXPECT_LE(l1_tail.value, 1.2);

  const auto liouville = omega_estimate(RealSpec::liouville(10), 1, {50, 1000}, false);
  EXPECT_NEAR(liouville.value, 2.0, 1e-6);
  EXPECT_EQ(coords(liouville), "-11,100");

  const auto sqrt2 = lambda_estimate(RealSpec::parse("alg:-2,0,1:1,2"), 2, {2, 10000});
  EXPECT_GE(sqrt2.value, 0.9);
  EXPECT_LE(sqrt2.value, 1.3);
  EXPECT_EQ(coords(sqrt2), "1,1,2");

  const auto third = omega_estimate(RealSpec::parse("rat:1/3"), 1, {2, 10}, false);
  EXPECT_EQ(third.value, kInfinity);
  EXPECT_EQ(coords(third), "-1,3");
  const auto minus = omega_estimate(RealSpec::parse("rat:-5/7"), 1, {2, 10}, false);
  EXPECT_EQ(minus.value, kInfinity);
  EXPECT_EQ(coords(minus), "5,7");
}

TEST(Estimates, TopListIsOrderedAndBounded) {
  SearchOptions options;
  options.top_count = 5;
  const auto est = omega_estimate(RealSpec::euler(), 2, {10, 60}, false, options);
  ASSERT_EQ(est.top_witnesses.size(), 5u);
  for (std::size_t i = 1; i < est.top_witnesses.size(); ++i) {
    EXPECT_GE(est.top_witnesses[i - 1].exponent.lo + kTieTolerance,
              est.top_witnesses[i].exponent.lo);
  }
  EXPECT_EQ(est.value, est.top_witnesses.front().exponent.lo);
  for (const auto& w : est.top_witnesses) {
    EXPECT_GE(w.height, 10);
    EXPECT_LE(w.height, 60);
  }
}

class NaiveEquivalence : public ::testing::TestWithParam<std::string> {};

TEST_P(NaiveEquivalence, MatchesExhaustiveSearch) {
  const auto spec = RealSpec::parse(GetParam());
  const Enclosure e = enclose(spec, 30);
  std::vector<ExponentKind> kinds{ExponentKind::Omega, ExponentKind::OmegaLead};
  if (e.lo >= -1 && e.hi <= 1) kinds.push_back(ExponentKind::Lambda);
  SearchOptions pruned, unpruned;
  unpruned.pruning = false;
  for (const SearchWindow window : {SearchWindow(2, 8), SearchWindow(3, 6)}) {
    for (unsigned k = 1; k <= 2; ++k) {
      for (auto kind : kinds) {
        const auto naive = oracle::naive_best(spec, kind, k, window);
        EXPECT_EQ(oracle::compare_with_naive(spec, kind, k, window, pruned, naive), "");
        EXPECT_EQ(oracle::compare_with_naive(spec, kind, k, window, unpruned, naive), "");
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Specs, NaiveEquivalence,
                         ::testing::ValuesIn(oracle::equivalence_specs()),
                         [](const auto& info) { return "spec" + std::to_string(info.index); });

TEST(Properties, WindowRestrictionAndDegreeMonotonicity) {
  const RealSpec specs[] = {RealSpec::euler(), RealSpec::parse("cf:1;1;per=1"),
                            RealSpec::random_digits(12345), RealSpec::liouville(10)};
  for (const auto& spec : specs) {
    const auto narrow = omega_estimate(spec, 1, {20, 200}, false).value;
    const auto wide = omega_estimate(spec, 1, {10, 400}, false).value;
    EXPECT_LE(narrow, wide) << spec.to_string();
    for (unsigned k = 1; k <= 2; ++k) {
      const auto all = omega_estimate(spec, k, {10, 60}, false).value;
      const auto lead = omega_estimate(spec, k, {10, 60}, true).value;
      EXPECT_LE(lead, all) << spec.to_string();
    }
    EXPECT_LE(omega_estimate(spec, 1, {10, 60}, false).value,
              omega_estimate(spec, 2, {10, 60}, false).value);
  }
}

TEST(Properties, LambdaDropsWithDimension) {
  const RealSpec specs[] = {RealSpec::euler(), RealSpec::random_digits(777),
                            RealSpec::parse("alg:-2,0,1:1,2")};
  for (const auto& spec : specs) {
    const auto higher = lambda_estimate(spec, 2, {2, 2000});
    ASSERT_FALSE(higher.empty());
    // Dropping the last coordinate keeps x_0, shrinks the error and the height.
    for (const auto& w : higher.top_witnesses) {
      std::vector<Integer> truncated(w.coords.begin(), w.coords.end() - 1);
      Integer h = 0;
      for (const auto& x : truncated) h = std::max(h, Integer(abs(x)));
      if (h < 2 || w.exponent.lo <= 0) continue;
      const auto lower = score_point(truncated, spec);
      EXPECT_GE(lower.exponent.hi, w.exponent.lo) << w.coords_string();
    }
    EXPECT_LE(higher.value, lambda_estimate(spec, 1, {2, 2000}).value);
  }
}

TEST(Properties, SignSymmetry) {
  const std::pair<const char*, const char*> pairs[] = {
      {"alg:-2,0,1:1,2", "alg:-2,0,1:-2,-1"},
      {"rat:2/7", "rat:-2/7"},
      {"cf:1;1;per=1", "alg:-1,1,1:-2,-1"},
      {"const:e", "mob:1:0:mob:1:0:const:e"}};
  for (const auto& [a, b] : pairs) {
    const auto pa = RealSpec::parse(a);
    const auto pb = RealSpec::parse(b);
    if (std::string(b).starts_with("mob")) {
      // 1 / (1 / e) = e: a composed image of the same number.
      EXPECT_NEAR(omega_estimate(pa, 2, {5, 40}, false).value,
                  omega_estimate(pb, 2, {5, 40}, false).value, 1e-6);
      continue;
    }
    for (unsigned k = 1; k <= 2; ++k) {
      const auto ea = omega_estimate(pa, k, {2, 80}, false);
      const auto eb = omega_estimate(pb, k, {2, 80}, false);
      EXPECT_EQ(ea.value, eb.value) << a;
    }
  }
}

TEST(Properties, WorkerCountDoesNotChangeResults) {
  const RealSpec specs[] = {RealSpec::euler(), RealSpec::parse("cf:1;1;per=1"),
                            RealSpec::parse("rat:-5/7"), RealSpec::random_digits(3)};
  for (const auto& spec : specs) {
    SearchOptions one, many;
    many.workers = 4;
    const auto a = omega_estimate(spec, 2, {5, 40}, false, one);
    const auto b = omega_estimate(spec, 2, {5, 40}, false, many);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump()) << spec.to_string();
    const auto c = lambda_estimate(spec, 2, {2, 3000}, one);
    const auto d = lambda_estimate(spec, 2, {2, 3000}, many);
    EXPECT_EQ(to_json(c).dump(), to_json(d).dump()) << spec.to_string();
  }
}

TEST(Estimates, CapIsEnforced) {
  SearchOptions options;
  options.cap = 1000;
  try {
    omega_estimate(RealSpec::euler(), 2, {2, 100}, false, options);
    FAIL() << "expected CapExceeded";
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.required(), std::pow(201.0, 3));
    EXPECT_EQ(e.cap(), 1000);
  }
  EXPECT_THROW(lambda_estimate(RealSpec::euler(), 1, {2, 5000}, options), CapExceeded);
  EXPECT_NO_THROW(lambda_estimate(RealSpec::euler(), 1, {2, 1000}, options));
}

TEST(Estimates, JsonShape) {
  const auto est = omega_estimate(RealSpec::parse("rat:1/3"), 1, {2, 10}, false);
  const auto j = to_json(est);
  EXPECT_EQ(j["kind"], "omega");
  EXPECT_EQ(j["degree"], 1);
  EXPECT_EQ(j["xi"], "rat:1/3");
  EXPECT_EQ(j["window"]["h_min"], 2);
  EXPECT_EQ(j["witnesses"][0]["coeffs"], "-1,3");
}

TEST(BbLowerBound, ValuesAndMonotonicity) {
  EXPECT_DOUBLE_EQ(bb_lower_bound(2.0, 2, 2), 0.5);
  EXPECT_DOUBLE_EQ(bb_lower_bound(kInfinity, 2, 2), 1.0);
  EXPECT_DOUBLE_EQ(bb_lower_bound(kInfinity, 4, 4), 1.0 / 3.0);
  for (unsigned n = 2; n <= 5; ++n) {
    for (unsigned k = 2; k <= n; ++k) {
      double previous = bb_lower_bound(0.0, k, n);
      for (double w = 0.25; w < 20; w += 0.25) {
        const double v = bb_lower_bound(w, k, n);
        EXPECT_GE(v, previous);
        previous = v;
      }
      EXPECT_LE(previous, bb_lower_bound(kInfinity, k, n));
    }
  }
  EXPECT_THROW(bb_lower_bound(1.0, 1, 2), InvalidArgument);
  EXPECT_THROW(bb_lower_bound(1.0, 3, 2), InvalidArgument);
  EXPECT_THROW(bb_lower_bound(-1.0, 2, 2), InvalidArgument);
}

}  // namespace
}  // namespace leadlift
