#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leadlift/exponents.hpp"
#include "leadlift/real_spec.hpp"
#include "leadlift/transference.hpp"

namespace leadlift {

// Exact assertions can FAIL; estimator-based comparisons that a finite
// window cannot settle are INCONCLUSIVE; ERROR marks checks that could not
// run (bad configuration, search cap).
enum class Outcome { Pass, Inconclusive, Fail, Error };
std::string to_string(Outcome o);

struct CheckReport {
  std::string name;
  nlohmann::json inputs = nlohmann::json::object();
  Outcome outcome = Outcome::Pass;
  std::string margin;  // decimal or fraction string; empty when not applicable
  nlohmann::json artifacts = nlohmann::json::object();
  double runtime_ms = 0;
};
nlohmann::json to_json(const CheckReport& r);

// Uniform integer in [lo, hi] by rejection sampling on raw mt19937_64
// output, so streams agree across standard libraries.
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

struct TheoremSuiteOptions {
  std::vector<unsigned> k_list{1, 2, 3, 4, 5};  // each with nodes 0..k
  std::vector<NodeSet> node_sets;               // extra node sets
  std::size_t trials = 10000;
  std::int64_t coeff_bound = 1000000;
  std::uint64_t seed = 1;
};

// Random primitive polynomials through C1/C2 validity, lift dominance, the
// c_k identity, the norm-ratio bounds and the exact evaluation identity at
// a random rational xi. One report per node set.
std::vector<CheckReport> run_theorem_suite(const TheoremSuiteOptions& options);

// lambda_hat(n) against bb_lower_bound(omega_hat(k), k, n).
CheckReport run_transference_check(const RealSpec& spec, unsigned k, unsigned n,
                                   const SearchWindow& omega_window,
                                   const SearchWindow& lambda_window,
                                   const SearchOptions& options, double tolerance = 0.05);

// Lifts the top omega witnesses and checks each against the transfer bound.
CheckReport run_lift_transfer_check(const RealSpec& spec, unsigned k, const NodeSet& nodes,
                                    const SearchWindow& window, const SearchOptions& options);

// A single estimate compared with an expected range and optional witness.
struct EstimateExpectation {
  std::optional<double> min;
  std::optional<double> max;
  std::optional<std::string> witness;  // coordinate string of the best witness
};
CheckReport run_estimate_check(const RealSpec& spec, ExponentKind kind, unsigned degree,
                               const SearchWindow& window, const EstimateExpectation& expect,
                               const SearchOptions& options);

struct CorpusCheck {
  enum class Type { Estimate, Transference, LiftTransfer };
  Type type = Type::Estimate;
  ExponentKind kind = ExponentKind::Omega;  // Estimate
  unsigned k = 1;                           // degree for Estimate
  unsigned n = 2;                           // Transference
  SearchWindow window{2, 2};                // Estimate, LiftTransfer; omega window
  SearchWindow lambda_window{2, 2};         // Transference
  std::optional<NodeSet> nodes;             // LiftTransfer; default 0..k
  EstimateExpectation expect;
};

struct KnownExponent {
  std::string key;    // e.g. "omega_2"
  std::string value;  // extended real as text
  std::string note;   // provenance
};

struct CorpusEntry {
  std::string name;
  RealSpec spec = RealSpec::rational(0);
  std::vector<KnownExponent> known;
  std::vector<CorpusCheck> checks;
};

struct CorpusConfig {
  std::optional<TheoremSuiteOptions> theorem;
  std::vector<CorpusEntry> entries;
  double cap = 1e9;
  double tolerance = 0.05;
  unsigned rel_bits = 32;
  unsigned workers = 1;  // not echoed: results do not depend on it

  static CorpusConfig defaults();
  // Throws InvalidArgument / ParseError on malformed input.
  static CorpusConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct Report {
  nlohmann::json config_echo = nlohmann::json::object();
  std::vector<CheckReport> checks;

  nlohmann::json to_json(bool with_timestamp = true) const;
  std::string to_csv() const;
  // 0: no FAIL or ERROR; 1: some FAIL; 2: some ERROR and no FAIL.
  int exit_code() const;
};

Report run_corpus(const CorpusConfig& config);

// Drops the fields that legitimately vary between identical runs
// (timestamp, runtime_ms).
nlohmann::json strip_volatile(nlohmann::json report);

std::string tool_version();

}  // namespace leadlift
