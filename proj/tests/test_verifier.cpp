#include <gtest/gtest.h>

#include <random>

#include "leadlift/error.hpp"
#include "leadlift/verifier.hpp"

namespace leadlift {
namespace {

TEST(UniformInt, StaysInRangeAndIsSeeded) {
  std::mt19937_64 a(42), b(42);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto x = uniform_int(a, -3, 3);
    ASSERT_GE(x, -3);
    ASSERT_LE(x, 3);
    ++seen[static_cast<std::size_t>(x + 3)];
    EXPECT_EQ(x, uniform_int(b, -3, 3));
  }
  for (int count : seen) EXPECT_GT(count, 800);
  EXPECT_EQ(uniform_int(a, 5, 5), 5);
}

TEST(TheoremSuite, SmallRunPasses) {
  TheoremSuiteOptions options;
  options.k_list = {1, 2, 3};
  options.node_sets = {NodeSet::parse("-1,0,2")};
  options.trials = 300;
  const auto reports = run_theorem_suite(options);
  ASSERT_EQ(reports.size(), 4u);
  for (const auto& r : reports) {
    EXPECT_EQ(r.outcome, Outcome::Pass) << to_json(r).dump();
    EXPECT_EQ(r.artifacts["failures"], 0);
  }
  EXPECT_EQ(reports[1].artifacts["constants"]["M"], "28");
}

TEST(TheoremSuite, DeterministicForSeed) {
  TheoremSuiteOptions options;
  options.k_list = {2};
  options.trials = 100;
  auto a = to_json(run_theorem_suite(options).front());
  auto b = to_json(run_theorem_suite(options).front());
  a.erase("runtime_ms");
  b.erase("runtime_ms");
  EXPECT_EQ(a, b);
}

TEST(TransferenceCheck, PassesOnRandomDigits) {
  SearchOptions options;
  options.cap = 1e9;
  const auto r = run_transference_check(RealSpec::random_digits(12345), 2, 2, {10, 100},
                                        {2, 10000}, options);
  EXPECT_EQ(r.outcome, Outcome::Pass) << to_json(r).dump();
  EXPECT_FALSE(r.margin.empty());
}

TEST(TransferenceCheck, InconclusiveWhenLambdaWindowTooSmall) {
  SearchOptions options;
  options.cap = 1e9;
  const auto r =
      run_transference_check(RealSpec::euler(), 2, 2, {10, 100}, {500, 600}, options);
  EXPECT_EQ(r.outcome, Outcome::Inconclusive) << to_json(r).dump();
  EXPECT_TRUE(r.artifacts.contains("recommendation"));
}

TEST(TransferenceCheck, BadDegreesAreErrors) {
  const auto r = run_transference_check(RealSpec::euler(), 3, 2, {10, 100}, {2, 100}, {});
  EXPECT_EQ(r.outcome, Outcome::Error);
}

TEST(LiftTransferCheck, LiouvilleWitness) {
  SearchOptions options;
  options.top_count = 3;
  const auto r =
      run_lift_transfer_check(RealSpec::liouville(10), 1, NodeSet::standard(1), {50, 1000}, options);
  EXPECT_EQ(r.outcome, Outcome::Pass) << to_json(r).dump();
  EXPECT_EQ(r.artifacts["violations"], 0);
  const auto& first = r.artifacts["witnesses"][0];
  EXPECT_EQ(first["P"], IntegerPolynomial({-11, 100}, 1).to_string());
  EXPECT_EQ(first["Q"], IntegerPolynomial({100, 356}, 1).to_string());
  EXPECT_EQ(first["index"], 1);
  EXPECT_EQ(r.artifacts["M"], "4");
}

TEST(LiftTransferCheck, ExactRootsOnBothSides) {
  const auto r = run_lift_transfer_check(RealSpec::parse("rat:1/3"), 1, NodeSet::standard(1),
                                         {2, 10}, {});
  EXPECT_EQ(r.outcome, Outcome::Pass) << to_json(r).dump();
  EXPECT_EQ(r.artifacts["witnesses"][0]["status"], "both_exact_zero");
}

TEST(EstimateCheck, PassAndFail) {
  EstimateExpectation good{1.9, 2.6, std::string("-11,100")};
  EXPECT_EQ(run_estimate_check(RealSpec::liouville(10), ExponentKind::Omega, 1, {50, 1000}, good,
                               {})
                .outcome,
            Outcome::Pass);
  EstimateExpectation wrong_witness{1.9, 2.6, std::string("-1,9")};
  EXPECT_EQ(run_estimate_check(RealSpec::liouville(10), ExponentKind::Omega, 1, {50, 1000},
                               wrong_witness, {})
                .outcome,
            Outcome::Fail);
  EstimateExpectation too_high{3.0, std::nullopt, std::nullopt};
  EXPECT_EQ(run_estimate_check(RealSpec::liouville(10), ExponentKind::Omega, 1, {50, 1000},
                               too_high, {})
                .outcome,
            Outcome::Fail);
  EstimateExpectation infinite{kInfinity, std::nullopt, std::nullopt};
  EXPECT_EQ(run_estimate_check(RealSpec::parse("rat:1/3"), ExponentKind::Omega, 1, {2, 10},
                               infinite, {})
                .outcome,
            Outcome::Pass);
}

TEST(EstimateCheck, CapExceededIsAnError) {
  SearchOptions options;
  options.cap = 1000;
  const auto r = run_estimate_check(RealSpec::euler(), ExponentKind::Omega, 2, {2, 100}, {},
                                    options);
  EXPECT_EQ(r.outcome, Outcome::Error);
  EXPECT_TRUE(r.artifacts.contains("required_volume"));
}

nlohmann::json small_config() {
  return nlohmann::json::parse(R"({
    "cap": 1e7,
    "theorem_suite": {"k": [1, 2], "trials": 50, "seed": 9},
    "entries": [
      {"name": "third", "xi": "rat:1/3",
       "known": [{"key": "omega_1", "value": "inf", "note": "rational"}],
       "checks": [
         {"type": "estimate", "kind": "omega", "degree": 1, "window": [2, 10],
          "expect": {"min": "inf", "witness": "-1,3"}},
         {"type": "lift_transfer", "k": 1, "window": [2, 10]}]},
      {"name": "e", "xi": "const:e",
       "checks": [
         {"type": "estimate", "kind": "omega", "degree": 3, "window": [2, 1000]},
         {"type": "transference", "k": 2, "n": 2, "omega_window": [10, 60],
          "lambda_window": [2, 3000]}]}
    ]})");
}

TEST(CorpusConfig, JsonRoundTrip) {
  const auto c = CorpusConfig::from_json(small_config());
  ASSERT_EQ(c.entries.size(), 2u);
  EXPECT_EQ(c.entries[0].checks.size(), 2u);
  EXPECT_EQ(c.entries[0].checks[0].expect.min, kInfinity);
  EXPECT_EQ(c.entries[0].known[0].note, "rational");
  EXPECT_EQ(c.entries[1].checks[1].type, CorpusCheck::Type::Transference);
  const auto again = CorpusConfig::from_json(c.to_json());
  EXPECT_EQ(again.to_json(), c.to_json());
  EXPECT_FALSE(c.to_json().contains("workers"));
}

TEST(CorpusConfig, RejectsMalformedInput) {
  auto bad_type = small_config();
  bad_type["entries"][0]["checks"][0]["type"] = "guess";
  EXPECT_THROW(CorpusConfig::from_json(bad_type), InvalidArgument);
  auto unknown_key = small_config();
  unknown_key["colour"] = "blue";
  EXPECT_THROW(CorpusConfig::from_json(unknown_key), InvalidArgument);
  auto bad_spec = small_config();
  bad_spec["entries"][0]["xi"] = "rat:1/0";
  EXPECT_THROW(CorpusConfig::from_json(bad_spec), ParseError);
  auto bad_window = small_config();
  bad_window["entries"][0]["checks"][0]["window"] = nlohmann::json::array({10, 2});
  EXPECT_THROW(CorpusConfig::from_json(bad_window), InvalidArgument);
}

TEST(CorpusConfig, DefaultsParseBack) {
  const auto d = CorpusConfig::defaults();
  EXPECT_FALSE(d.entries.empty());
  EXPECT_EQ(CorpusConfig::from_json(d.to_json()).to_json(), d.to_json());
}

TEST(Corpus, ErrorsAreIsolatedAndExitCodeFollows) {
  const auto config = CorpusConfig::from_json(small_config());
  const Report report = run_corpus(config);
  std::map<std::string, Outcome> outcomes;
  for (const auto& r : report.checks) outcomes[r.name] = r.outcome;
  // Two theorem reports plus the four entry checks.
  EXPECT_EQ(report.checks.size(), 6u);
  EXPECT_EQ(outcomes.at("third/estimate:omega(1)[2, 10]"), Outcome::Pass);
  EXPECT_EQ(outcomes.at("e/estimate:omega(3)[2, 1000]"), Outcome::Error);
  EXPECT_EQ(report.exit_code(), 2);

  const auto csv = report.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "name,outcome,margin");
  EXPECT_NE(csv.find("\"e/estimate:omega(3)[2, 1000]\",ERROR"), std::string::npos);

  const auto j = report.to_json();
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["tool_version"], tool_version());
  EXPECT_TRUE(j.contains("timestamp"));
  const auto stripped = strip_volatile(j);
  EXPECT_FALSE(stripped.contains("timestamp"));
  EXPECT_FALSE(stripped["checks"][0].contains("runtime_ms"));
}

TEST(Corpus, ExitCodes) {
  Report r;
  EXPECT_EQ(r.exit_code(), 0);
  r.checks.push_back({});
  r.checks.back().outcome = Outcome::Inconclusive;
  EXPECT_EQ(r.exit_code(), 0);
  r.checks.push_back({});
  r.checks.back().outcome = Outcome::Error;
  EXPECT_EQ(r.exit_code(), 2);
  r.checks.push_back({});
  r.checks.back().outcome = Outcome::Fail;
  EXPECT_EQ(r.exit_code(), 1);
}

TEST(Corpus, WorkerCountDoesNotChangeReport) {
  auto config = CorpusConfig::from_json(small_config());
  config.workers = 1;
  const auto one = strip_volatile(run_corpus(config).to_json());
  config.workers = 3;
  const auto three = strip_volatile(run_corpus(config).to_json());
  EXPECT_EQ(one, three);
}

}  // namespace
}  // namespace leadlift
