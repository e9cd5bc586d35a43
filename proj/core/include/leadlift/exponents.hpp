#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leadlift/exponent_interval.hpp"
#include "leadlift/oracle.hpp"
#include "leadlift/polynomial.hpp"
#include "leadlift/real_spec.hpp"

namespace leadlift {

// Heights admitted as witnesses: 2 <= h_min <= h_max.
struct SearchWindow {
  std::int64_t h_min = 2;
  std::int64_t h_max = 2;

  SearchWindow() = default;
  SearchWindow(std::int64_t lo, std::int64_t hi);
  // [ceil(sqrt(H)), H]
  static SearchWindow tail(std::int64_t h);
  std::string to_string() const;
};

enum class ExponentKind { Omega, OmegaLead, Lambda };
std::string to_string(ExponentKind kind);
ExponentKind parse_exponent_kind(std::string_view text);  // omega | omega-lead | lambda

// A polynomial (coefficients, constant term first) or an integer point
// (x_0, ..., x_n) with its error |P(xi)| resp. max_m |x_0 xi^m - x_m|.
struct WitnessRecord {
  std::vector<Integer> coords;
  Integer height;
  AbsValueResult error;
  ExponentInterval exponent;

  IntegerPolynomial polynomial() const;  // polynomial witnesses only
  std::string coords_string() const;
};

struct ExponentEstimate {
  ExponentKind kind = ExponentKind::Omega;
  unsigned degree = 1;
  double value = -kInfinity;  // exponent of the best witness; -inf when none
  std::vector<WitnessRecord> top_witnesses;  // best first
  SearchWindow window;
  std::string spec_echo;
  std::uint64_t skipped_undecided = 0;
  double search_volume = 0;

  bool empty() const noexcept { return top_witnesses.empty(); }
};

struct SearchOptions {
  unsigned workers = 1;
  double cap = 1e8;           // limit on the nominal search volume
  std::size_t top_count = 10;
  unsigned rel_bits = 32;     // relative precision of witness errors
  unsigned budget_bits = kDefaultBudgetBits;
  // Skip candidates that provably cannot enter the top list (c0 range and
  // double-precision filter). Off: every vector is scored exactly.
  bool pruning = true;
};

// Witnesses closer than this in exponent are ordered by (height, coordinates).
inline constexpr double kTieTolerance = 1.0 / (1 << 20);

// Best exponent over all nonzero integer polynomials of degree <= k with
// height in the window (leading_only: |c_k| = height). Only primitive
// vectors with positive leading coefficient are enumerated; multiples are
// scored through the extreme admissible scale factors, which is exact
// because the exponent is monotone in the factor.
ExponentEstimate omega_estimate(const RealSpec& spec, unsigned k, const SearchWindow& window,
                                bool leading_only, const SearchOptions& options = {});

// Best exponent over the points (x_0, round(x_0 xi), ..., round(x_0 xi^n)),
// 1 <= x_0 <= h_max, with max-norm in the window.
ExponentEstimate lambda_estimate(const RealSpec& spec, unsigned n, const SearchWindow& window,
                                 const SearchOptions& options = {});

// Exponent record of a single witness, scored from scratch.
WitnessRecord score_polynomial(const IntegerPolynomial& p, const RealSpec& spec,
                               unsigned rel_bits = 32, unsigned budget_bits = kDefaultBudgetBits);
WitnessRecord score_point(const std::vector<Integer>& point, const RealSpec& spec,
                          unsigned rel_bits = 32, unsigned budget_bits = kDefaultBudgetBits);

// (w - n + k) / ((k - 1) w + n); 1 / (k - 1) at w = +inf.
double bb_lower_bound(double omega, unsigned k, unsigned n);

nlohmann::json to_json(const WitnessRecord& w);
nlohmann::json to_json(const ExponentEstimate& e);

}  // namespace leadlift
