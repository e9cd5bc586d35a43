#include "leadlift/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <sstream>

#include "leadlift/error.hpp"
#include "leadlift/format.hpp"

#ifndef LEADLIFT_VERSION
#define LEADLIFT_VERSION "0.0.0"
#endif

namespace leadlift {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json window_json(const SearchWindow& w) { return json::array({w.h_min, w.h_max}); }

Integer eval_integer(const IntegerPolynomial& p, const Integer& x) {
  const auto& c = p.coefficients();
  Integer acc = 0;
  for (std::size_t j = c.size(); j-- > 0;) acc = acc * x + c[j];
  return acc;
}

Integer power(const Integer& base, unsigned e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

// Runs body, turning exceptions into an ERROR outcome.
template <class Body>
CheckReport guarded(std::string name, json inputs, Body body) {
  const auto start = Clock::now();
  CheckReport r;
  r.name = std::move(name);
  r.inputs = std::move(inputs);
  try {
    body(r);
  } catch (const CapExceeded& e) {
    r.outcome = Outcome::Error;
    r.artifacts["error"] = e.what();
    r.artifacts["required_volume"] = format_decimal(e.required());
  } catch (const std::exception& e) {
    r.outcome = Outcome::Error;
    r.artifacts["error"] = e.what();
  }
  r.runtime_ms = elapsed_ms(start);
  return r;
}

struct TheoremTally {
  std::size_t failures = 0;
  std::map<std::string, std::size_t> by_assertion;
  json first_failure;

  void fail(const std::string& assertion, const IntegerPolynomial& p, const std::string& detail) {
    ++failures;
    ++by_assertion[assertion];
    if (first_failure.is_null()) {
      first_failure = {{"assertion", assertion}, {"poly", p.to_string()}, {"detail", detail}};
    }
  }
};

CheckReport theorem_check(const NodeSet& nodes, const TheoremSuiteOptions& options,
                          std::uint64_t seed) {
  json inputs = {{"nodes", nodes.to_string()},
                 {"k", nodes.k()},
                 {"trials", options.trials},
                 {"coeff_bound", options.coeff_bound},
                 {"seed", seed}};
  return guarded("theorem_suite(k=" + std::to_string(nodes.k()) + ",nodes=" + nodes.to_string() +
                     ")",
                 std::move(inputs), [&](CheckReport& r) {
    if (options.trials < 1) throw InvalidArgument("theorem suite: trials must be >= 1");
    if (options.coeff_bound < 1) throw InvalidArgument("theorem suite: coeff_bound must be >= 1");
    const Transference t(nodes);
    const auto& c = t.constants();
    const unsigned k = nodes.k();
    const Integer& m = t.m();
    const Integer mk = power(m, k);
    const NormRatioBounds ratio = t.norm_ratio_bounds();
    std::mt19937_64 rng(seed);
    TheoremTally tally;
    std::optional<Rational> min_slack;

    for (std::size_t trial = 0; trial < options.trials; ++trial) {
      std::vector<Integer> coeffs(k + 1);
      IntegerPolynomial p;
      do {
        for (auto& x : coeffs) {
          x = static_cast<long>(uniform_int(rng, -options.coeff_bound, options.coeff_bound));
        }
        p = IntegerPolynomial(coeffs, k);
      } while (p.is_zero() || !p.is_primitive());
      const Integer hp = height(p);

      Integer max_value = 0;
      for (const auto& r_i : nodes.nodes()) max_value = std::max(max_value, Integer(abs(eval_integer(p, r_i))));
      if (Rational(hp) > c.c1 * max_value) tally.fail("c1_validity", p, "");
      for (const auto& r_i : nodes.nodes()) {
        if (Rational(height(shift(p, r_i))) > c.c2 * hp) {
          tally.fail("c2_validity", p, "node " + r_i.get_str());
        }
      }

      std::size_t i = 0;
      try {
        i = t.select_index(p);
      } catch (const std::logic_error& e) {
        tally.fail("index_selection", p, e.what());
        continue;
      }
      const IntegerPolynomial q = lead_lift_transform(p, m, nodes[i], k);
      const Integer ck = q.coefficient(k);
      const Integer hq = height(q);
      if (abs(ck) != hq) tally.fail("leading_dominance", p, "Q = " + q.to_string());
      if (ck != mk * eval_integer(p, nodes[i])) tally.fail("leading_identity", p, "Q = " + q.to_string());
      const Rational ratio_pq = make_rational(hq, hp);
      if (ratio_pq < ratio.lower || ratio_pq > ratio.upper) {
        tally.fail("norm_ratio", p, "ratio " + to_string(ratio_pq));
      }
      Integer rest = 0;
      for (unsigned j = 0; j < k; ++j) rest = std::max(rest, Integer(abs(q.coefficient(j))));
      if (ck != 0) {
        const Rational slack = make_rational(abs(ck) - rest, abs(ck));
        if (!min_slack || slack < *min_slack) min_slack = slack;
      }

      Rational xi;
      do {
        xi = make_rational(Integer(static_cast<long>(uniform_int(rng, -10000, 10000))),
                           Integer(static_cast<long>(uniform_int(rng, 1, 1000))));
      } while (xi == nodes[i]);
      const Rational xi_i = 1 / (m * (xi - nodes[i]));
      Rational factor = 1;
      for (unsigned j = 0; j < k; ++j) factor *= m * xi_i;
      if (eval_rational(q, xi_i) != factor * eval_rational(p, xi)) {
        tally.fail("evaluation_identity", p, "xi = " + to_string(xi));
      }
    }

    r.outcome = tally.failures == 0 ? Outcome::Pass : Outcome::Fail;
    r.margin = min_slack ? format_decimal(*min_slack) : "";
    r.artifacts["constants"] = {{"C1", to_string(c.c1)}, {"C2", to_string(c.c2)}, {"M", m.get_str()}};
    r.artifacts["norm_ratio_bounds"] = {to_string(ratio.lower), to_string(ratio.upper)};
    r.artifacts["failures"] = tally.failures;
    r.artifacts["failures_by_assertion"] = tally.by_assertion;
    if (!tally.first_failure.is_null()) r.artifacts["first_failure"] = tally.first_failure;
  });
}

std::optional<double> parse_extended(const json& j) {
  if (j.is_null()) return std::nullopt;
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf" || s == "+inf") return kInfinity;
  if (s == "-inf") return -kInfinity;
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw InvalidArgument("expected a number or \"inf\", got '" + s + "'");
  return v;
}

json extended_json(const std::optional<double>& v) {
  return v ? json(format_decimal(*v)) : json(nullptr);
}

SearchWindow parse_window(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw InvalidArgument("window must be a two-element array [h_min, h_max]");
  }
  return SearchWindow(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
}

template <class T>
T value_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw InvalidArgument(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) ==
        allowed.end()) {
      throw InvalidArgument(where + ": unknown key '" + key + "'");
    }
  }
}

std::string check_type_name(CorpusCheck::Type t) {
  switch (t) {
    case CorpusCheck::Type::Estimate:
      return "estimate";
    case CorpusCheck::Type::Transference:
      return "transference";
    case CorpusCheck::Type::LiftTransfer:
      return "lift_transfer";
  }
  return "?";
}

CorpusCheck estimate(ExponentKind kind, unsigned degree, SearchWindow w,
                     std::optional<double> min, std::optional<double> max,
                     std::optional<std::string> witness = std::nullopt) {
  CorpusCheck c;
  c.type = CorpusCheck::Type::Estimate;
  c.kind = kind;
  c.k = degree;
  c.window = w;
  c.expect = {min, max, std::move(witness)};
  return c;
}

CorpusCheck transference(unsigned n) {
  CorpusCheck c;
  c.type = CorpusCheck::Type::Transference;
  c.k = 2;
  c.n = n;
  c.window = SearchWindow(10, 100);
  c.lambda_window = SearchWindow(2, 10000);
  return c;
}

CorpusCheck lift_transfer(unsigned k, SearchWindow w) {
  CorpusCheck c;
  c.type = CorpusCheck::Type::LiftTransfer;
  c.k = k;
  c.window = w;
  return c;
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "PASS";
    case Outcome::Inconclusive:
      return "INCONCLUSIVE";
    case Outcome::Fail:
      return "FAIL";
    case Outcome::Error:
      return "ERROR";
  }
  return "?";
}

json to_json(const CheckReport& r) {
  return {{"name", r.name},
          {"inputs", r.inputs},
          {"outcome", to_string(r.outcome)},
          {"margin", r.margin},
          {"artifacts", r.artifacts},
          {"runtime_ms", format_decimal(r.runtime_ms, 6)}};
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw InvalidArgument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % span);
}

std::vector<CheckReport> run_theorem_suite(const TheoremSuiteOptions& options) {
  std::vector<NodeSet> sets;
  for (unsigned k : options.k_list) sets.push_back(NodeSet::standard(k));
  for (const auto& ns : options.node_sets) sets.push_back(ns);
  std::vector<CheckReport> out;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    // Each node set gets its own stream so adding one does not perturb others.
    std::seed_seq seq{options.seed, static_cast<std::uint64_t>(s)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    const std::uint64_t seed = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
    out.push_back(theorem_check(sets[s], options, seed));
  }
  return out;
}

CheckReport run_transference_check(const RealSpec& spec, unsigned k, unsigned n,
                                   const SearchWindow& omega_window,
                                   const SearchWindow& lambda_window,
                                   const SearchOptions& options, double tolerance) {
  json inputs = {{"xi", spec.to_string()},
                 {"k", k},
                 {"n", n},
                 {"omega_window", window_json(omega_window)},
                 {"lambda_window", window_json(lambda_window)},
                 {"tolerance", format_decimal(tolerance)}};
  return guarded("transference(k=" + std::to_string(k) + ",n=" + std::to_string(n) + ")",
                 std::move(inputs), [&](CheckReport& r) {
    if (k < 2 || n < k) throw InvalidArgument("transference check: need 2 <= k <= n");
    const ExponentEstimate omega = omega_estimate(spec, k, omega_window, false, options);
    const ExponentEstimate lambda = lambda_estimate(spec, n, lambda_window, options);
    r.artifacts["omega"] = to_json(omega);
    r.artifacts["lambda"] = to_json(lambda);
    if (omega.empty() || lambda.empty()) {
      r.outcome = Outcome::Inconclusive;
      r.artifacts["recommendation"] = "no witness in a window; enlarge the windows";
      return;
    }
    // The true omega_k is at least k, so clamping a negative estimate at 0
    // keeps it a lower bound.
    const double omega_used = std::max(omega.value, 0.0);
    const double bound = bb_lower_bound(omega_used, k, n);
    r.artifacts["bound"] = format_decimal(bound);
    r.artifacts["lambda_hat"] = format_decimal(lambda.value);
    r.artifacts["omega_hat"] = format_decimal(omega.value);
    r.margin = format_decimal(lambda.value - bound);
    if (lambda.value >= bound - tolerance) {
      r.outcome = Outcome::Pass;
    } else {
      r.outcome = Outcome::Inconclusive;
      r.artifacts["recommendation"] = "lambda_hat below bound - tolerance; enlarge lambda_window";
    }
  });
}

CheckReport run_lift_transfer_check(const RealSpec& spec, unsigned k, const NodeSet& nodes,
                                    const SearchWindow& window, const SearchOptions& options) {
  json inputs = {{"xi", spec.to_string()},
                 {"k", k},
                 {"nodes", nodes.to_string()},
                 {"window", window_json(window)}};
  return guarded("lift_transfer(k=" + std::to_string(k) + ",nodes=" + nodes.to_string() + ")" +
                     window.to_string(),
                 std::move(inputs), [&](CheckReport& r) {
    if (nodes.k() != k) throw InvalidArgument("lift transfer: node set size must be k + 1");
    const Transference t(nodes);
    const ExponentEstimate omega = omega_estimate(spec, k, window, false, options);
    r.artifacts["omega_hat"] = format_decimal(omega.value);
    r.artifacts["M"] = t.m().get_str();

    std::size_t violations = 0, undecided = 0, checked = 0;
    std::optional<double> min_margin;
    json rows = json::array();
    std::vector<IntegerPolynomial> polys;
    for (const auto& w : omega.top_witnesses) {
      const IntegerPolynomial p = w.polynomial().with_degree_bound(k);
      polys.push_back(p);
      const LiftResult lifted = t.lift(p, spec);
      const TransferBoundCheck b = t.check_transfer_bound(p, spec, options.rel_bits);
      json row = {{"P", p.to_string()},
                  {"index", lifted.index},
                  {"Q", lifted.lifted.to_string()},
                  {"xi_i", lifted.transformed_spec.to_string()},
                  {"leading_dominant", lifted.leading_dominant},
                  {"leading_identity", lifted.leading_identity}};
      if (b.undecided) {
        ++undecided;
        row["status"] = "undecided";
      } else {
        ++checked;
        row["e_P"] = {format_decimal(b.exponent_p.lo), format_decimal(b.exponent_p.hi)};
        row["e_Q"] = {format_decimal(b.exponent_q.lo), format_decimal(b.exponent_q.hi)};
        if (b.both_exact_zero) {
          row["status"] = "both_exact_zero";
        } else {
          row["difference"] = {format_decimal(b.difference.lo), format_decimal(b.difference.hi)};
          row["bound"] = {format_decimal(b.bound.lo), format_decimal(b.bound.hi)};
          row["margin"] = format_decimal(b.margin);
          row["status"] = b.violated ? "violated" : "ok";
          if (!b.violated && (!min_margin || b.margin < *min_margin)) min_margin = b.margin;
        }
        if (b.violated) ++violations;
      }
      if (!lifted.leading_dominant || !lifted.leading_identity) ++violations;
      rows.push_back(std::move(row));
    }
    r.artifacts["witnesses"] = std::move(rows);
    r.artifacts["violations"] = violations;
    r.artifacts["undecided"] = undecided;

    if (!polys.empty()) {
      const IndexHistogram hist = sequence_index_statistics(polys, nodes);
      r.artifacts["index_counts"] = hist.counts;
      r.artifacts["modal_index"] = hist.modal_index;
      // Reported only: finite windows say little about how fast the lifted
      // estimate approaches the original.
      try {
        const RealSpec image = apply_mobius(spec, t.m(), nodes[hist.modal_index], options.budget_bits);
        const ExponentEstimate lead = omega_estimate(image, k, window, true, options);
        r.artifacts["omega_lead_image"] = {{"xi_i", image.to_string()},
                                           {"value", format_decimal(lead.value)},
                                           {"gap", format_decimal(omega.value - lead.value)}};
      } catch (const std::exception& e) {
        r.artifacts["omega_lead_image"] = {{"error", e.what()}};
      }
    }

    r.margin = min_margin ? format_decimal(*min_margin) : (checked ? "inf" : "");
    if (violations) {
      r.outcome = Outcome::Fail;
    } else if (undecided || omega.empty()) {
      r.outcome = Outcome::Inconclusive;
    } else {
      r.outcome = Outcome::Pass;
    }
  });
}

CheckReport run_estimate_check(const RealSpec& spec, ExponentKind kind, unsigned degree,
                               const SearchWindow& window, const EstimateExpectation& expect,
                               const SearchOptions& options) {
  json inputs = {{"xi", spec.to_string()},
                 {"kind", to_string(kind)},
                 {"degree", degree},
                 {"window", window_json(window)},
                 {"expect_min", extended_json(expect.min)},
                 {"expect_max", extended_json(expect.max)},
                 {"expect_witness", expect.witness ? json(*expect.witness) : json(nullptr)}};
  return guarded("estimate:" + to_string(kind) + "(" + std::to_string(degree) + ")" +
                     window.to_string(),
                 std::move(inputs), [&](CheckReport& r) {
    const ExponentEstimate e =
        kind == ExponentKind::Lambda
            ? lambda_estimate(spec, degree, window, options)
            : omega_estimate(spec, degree, window, kind == ExponentKind::OmegaLead, options);
    r.artifacts["estimate"] = to_json(e);
    bool ok = !e.empty();
    double margin = kInfinity;
    if (expect.min) {
      ok = ok && e.value >= *expect.min;
      if (!std::isinf(*expect.min)) margin = std::min(margin, e.value - *expect.min);
    }
    if (expect.max) {
      ok = ok && e.value <= *expect.max;
      margin = std::min(margin, *expect.max - e.value);
    }
    if (expect.witness) {
      const std::string got = e.empty() ? "" : e.top_witnesses.front().coords_string();
      r.artifacts["best_witness"] = got;
      ok = ok && got == *expect.witness;
    }
    r.margin = format_decimal(margin);
    r.outcome = ok ? Outcome::Pass : Outcome::Fail;
  });
}

CorpusConfig CorpusConfig::defaults() {
  using K = ExponentKind;
  CorpusConfig c;
  c.theorem = TheoremSuiteOptions{};
  const SearchWindow wide(100, 10000), lam(2, 10000), small(10, 100);

  CorpusEntry golden{"golden_ratio", RealSpec::parse("cf:1;1;per=1"), {}, {}};
  golden.known = {{"omega_1", "1", "quadratic irrational with bounded partial quotients"}};
  golden.checks = {estimate(K::Omega, 1, wide, 1.00, 1.20),
                   estimate(K::Lambda, 1, wide, 1.00, 1.20), lift_transfer(1, wide)};

  CorpusEntry sqrt2{"sqrt2", RealSpec::parse("alg:-2,0,1:1,2"), {}, {}};
  sqrt2.known = {{"omega_1", "1", "quadratic irrational"},
                 {"omega_2", "inf", "root of x^2 - 2 (exact zero at degree 2)"}};
  sqrt2.checks = {estimate(K::Lambda, 2, lam, 0.9, 1.3), lift_transfer(1, wide),
                  lift_transfer(2, small)};

  CorpusEntry e{"e", RealSpec::euler(), {}, {}};
  e.known = {{"omega_n", "n", "classical: e is not a U-number and omega_n(e) = n"}};
  e.checks = {transference(2), transference(3), lift_transfer(2, small)};

  CorpusEntry liouville{"liouville10", RealSpec::liouville(10), {}, {}};
  liouville.known = {{"omega_1", "inf", "Liouville number sum 10^-m!"}};
  liouville.checks = {estimate(K::Omega, 1, SearchWindow(50, 1000), 1.9, 2.6, "-11,100"),
                      transference(2), transference(3), lift_transfer(1, SearchWindow(50, 1000)),
                      lift_transfer(2, small)};

  CorpusEntry random{"rand12345", RealSpec::random_digits(12345), {}, {}};
  random.known = {{"omega_n", "n", "metric theory: almost every real"},
                  {"lambda_n", "1/n", "metric theory: almost every real"}};
  random.checks = {estimate(K::Lambda, 2, lam, 0.45, std::nullopt), transference(2),
                   transference(3), lift_transfer(2, small)};

  CorpusEntry third{"rational_1_3", RealSpec::rational(Rational(1, 3)), {}, {}};
  third.known = {{"omega_1", "inf", "rational: exact zero once the window reaches the denominator"}};
  third.checks = {estimate(K::Omega, 1, SearchWindow(2, 10), kInfinity, std::nullopt, "-1,3"),
                  lift_transfer(1, SearchWindow(2, 10))};

  CorpusEntry neg{"rational_-5_7", RealSpec::rational(Rational(-5, 7)), {}, {}};
  neg.known = {{"omega_1", "inf", "rational: exact zero once the window reaches the denominator"}};
  neg.checks = {estimate(K::Omega, 1, SearchWindow(2, 10), kInfinity, std::nullopt, "5,7"),
                lift_transfer(1, SearchWindow(2, 10))};

  c.entries = {golden, sqrt2, e, liouville, random, third, neg};
  return c;
}

CorpusConfig CorpusConfig::from_json(const json& j) {
  check_keys(j, {"theorem_suite", "entries", "cap", "tolerance", "rel_bits", "workers", "defaults"},
             "config");
  CorpusConfig c = value_or(j, "defaults", false) ? defaults() : CorpusConfig{};
  try {
    if (j.contains("cap")) c.cap = j.at("cap").get<double>();
    if (j.contains("tolerance")) c.tolerance = j.at("tolerance").get<double>();
    if (j.contains("rel_bits")) c.rel_bits = j.at("rel_bits").get<unsigned>();
    if (j.contains("workers")) c.workers = j.at("workers").get<unsigned>();
    if (j.contains("theorem_suite")) {
      const json& t = j.at("theorem_suite");
      if (t.is_null()) {
        c.theorem.reset();
      } else {
        check_keys(t, {"k", "node_sets", "trials", "coeff_bound", "seed"}, "theorem_suite");
        TheoremSuiteOptions o;
        o.k_list = value_or(t, "k", o.k_list);
        for (const auto& ns : value_or(t, "node_sets", std::vector<std::string>{})) {
          o.node_sets.push_back(NodeSet::parse(ns));
        }
        o.trials = value_or(t, "trials", o.trials);
        o.coeff_bound = value_or(t, "coeff_bound", o.coeff_bound);
        o.seed = value_or(t, "seed", o.seed);
        c.theorem = o;
      }
    }
    if (j.contains("entries")) {
      c.entries.clear();
      for (const auto& e : j.at("entries")) {
        check_keys(e, {"name", "xi", "known", "checks"}, "entry");
        CorpusEntry entry;
        entry.name = e.at("name").get<std::string>();
        entry.spec = RealSpec::parse(e.at("xi").get<std::string>());
        for (const auto& kn : value_or(e, "known", json::array())) {
          entry.known.push_back({kn.at("key").get<std::string>(), kn.at("value").get<std::string>(),
                                 value_or(kn, "note", std::string())});
        }
        for (const auto& cj : value_or(e, "checks", json::array())) {
          check_keys(cj, {"type", "kind", "k", "n", "degree", "window", "omega_window",
                          "lambda_window", "nodes", "expect"},
                     "check in entry '" + entry.name + "'");
          CorpusCheck ck;
          const std::string type = cj.at("type").get<std::string>();
          if (type == "estimate") {
            ck.type = CorpusCheck::Type::Estimate;
            ck.kind = parse_exponent_kind(cj.at("kind").get<std::string>());
            ck.k = cj.at("degree").get<unsigned>();
            ck.window = parse_window(cj.at("window"));
            if (cj.contains("expect")) {
              const json& x = cj.at("expect");
              check_keys(x, {"min", "max", "witness"}, "expect");
              ck.expect.min = parse_extended(value_or(x, "min", json()));
              ck.expect.max = parse_extended(value_or(x, "max", json()));
              if (x.contains("witness") && !x.at("witness").is_null()) ck.expect.witness = x.at("witness").get<std::string>();
            }
          } else if (type == "transference") {
            ck.type = CorpusCheck::Type::Transference;
            ck.k = cj.at("k").get<unsigned>();
            ck.n = cj.at("n").get<unsigned>();
            ck.window = parse_window(cj.at("omega_window"));
            ck.lambda_window = parse_window(cj.at("lambda_window"));
          } else if (type == "lift_transfer") {
            ck.type = CorpusCheck::Type::LiftTransfer;
            ck.k = cj.at("k").get<unsigned>();
            ck.window = parse_window(cj.at("window"));
            if (cj.contains("nodes")) ck.nodes = NodeSet::parse(cj.at("nodes").get<std::string>());
          } else {
            throw InvalidArgument("unknown check type '" + type + "'");
          }
          entry.checks.push_back(std::move(ck));
        }
        c.entries.push_back(std::move(entry));
      }
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  if (c.workers < 1) throw InvalidArgument("config: workers must be >= 1");
  return c;
}

json CorpusConfig::to_json() const {
  json j;
  j["cap"] = cap;
  j["tolerance"] = tolerance;
  j["rel_bits"] = rel_bits;
  if (theorem) {
    std::vector<std::string> sets;
    for (const auto& ns : theorem->node_sets) sets.push_back(ns.to_string());
    j["theorem_suite"] = {{"k", theorem->k_list},
                          {"node_sets", sets},
                          {"trials", theorem->trials},
                          {"coeff_bound", theorem->coeff_bound},
                          {"seed", theorem->seed}};
  } else {
    j["theorem_suite"] = nullptr;
  }
  j["entries"] = json::array();
  for (const auto& e : entries) {
    json ej = {{"name", e.name}, {"xi", e.spec.to_string()}};
    ej["known"] = json::array();
    for (const auto& kn : e.known) {
      ej["known"].push_back({{"key", kn.key}, {"value", kn.value}, {"note", kn.note}});
    }
    ej["checks"] = json::array();
    for (const auto& ck : e.checks) {
      json cj = {{"type", check_type_name(ck.type)}};
      switch (ck.type) {
        case CorpusCheck::Type::Estimate:
          cj["kind"] = leadlift::to_string(ck.kind);
          cj["degree"] = ck.k;
          cj["window"] = window_json(ck.window);
          cj["expect"] = {{"min", extended_json(ck.expect.min)},
                          {"max", extended_json(ck.expect.max)},
                          {"witness", ck.expect.witness ? json(*ck.expect.witness) : json(nullptr)}};
          break;
        case CorpusCheck::Type::Transference:
          cj["k"] = ck.k;
          cj["n"] = ck.n;
          cj["omega_window"] = window_json(ck.window);
          cj["lambda_window"] = window_json(ck.lambda_window);
          break;
        case CorpusCheck::Type::LiftTransfer:
          cj["k"] = ck.k;
          cj["window"] = window_json(ck.window);
          cj["nodes"] = (ck.nodes ? *ck.nodes : NodeSet::standard(ck.k)).to_string();
          break;
      }
      ej["checks"].push_back(std::move(cj));
    }
    j["entries"].push_back(std::move(ej));
  }
  return j;
}

json Report::to_json(bool with_timestamp) const {
  json j;
  j["schema_version"] = 1;
  j["tool_version"] = tool_version();
  j["config_echo"] = config_echo;
  if (with_timestamp) {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["timestamp"] = buf;
  }
  j["checks"] = json::array();
  for (const auto& c : checks) j["checks"].push_back(leadlift::to_json(c));
  return j;
}

std::string Report::to_csv() const {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"') out += '"';
      out += ch;
    }
    return out + "\"";
  };
  std::ostringstream out;
  out << "name,outcome,margin\n";
  for (const auto& c : checks) {
    out << quote(c.name) << ',' << to_string(c.outcome) << ',' << quote(c.margin) << '\n';
  }
  return out.str();
}

int Report::exit_code() const {
  bool error = false;
  for (const auto& c : checks) {
    if (c.outcome == Outcome::Fail) return 1;
    if (c.outcome == Outcome::Error) error = true;
  }
  return error ? 2 : 0;
}

Report run_corpus(const CorpusConfig& config) {
  Report report;
  report.config_echo = config.to_json();
  if (config.theorem) report.checks = run_theorem_suite(*config.theorem);
  SearchOptions options;
  options.cap = config.cap;
  options.workers = config.workers;
  options.rel_bits = config.rel_bits;
  for (const auto& entry : config.entries) {
    for (const auto& ck : entry.checks) {
      CheckReport r;
      switch (ck.type) {
        case CorpusCheck::Type::Estimate:
          r = run_estimate_check(entry.spec, ck.kind, ck.k, ck.window, ck.expect, options);
          break;
        case CorpusCheck::Type::Transference:
          r = run_transference_check(entry.spec, ck.k, ck.n, ck.window, ck.lambda_window, options,
                                     config.tolerance);
          break;
        case CorpusCheck::Type::LiftTransfer:
          r = run_lift_transfer_check(entry.spec, ck.k,
                                      ck.nodes ? *ck.nodes : NodeSet::standard(ck.k), ck.window,
                                      options);
          break;
      }
      r.name = entry.name + "/" + r.name;
      report.checks.push_back(std::move(r));
    }
  }
  return report;
}

json strip_volatile(json report) {
  report.erase("timestamp");
  if (report.contains("checks")) {
    for (auto& c : report["checks"]) c.erase("runtime_ms");
  }
  return report;
}

std::string tool_version() { return LEADLIFT_VERSION; }

}  // namespace leadlift
