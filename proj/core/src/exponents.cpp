#include "leadlift/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "leadlift/error.hpp"
#include "leadlift/format.hpp"

namespace leadlift {

namespace {

bool better(const WitnessRecord& a, const WitnessRecord& b) {
  if (a.exponent.lo != b.exponent.lo) return a.exponent.lo > b.exponent.lo;
  if (a.height != b.height) return a.height < b.height;
  return a.coords < b.coords;
}

// The best `capacity` records under `better`.
class TopList {
 public:
  explicit TopList(std::size_t capacity) : capacity_(capacity) {}

  void add(WitnessRecord r) {
    if (items_.size() == capacity_ && !better(r, items_.back())) return;
    auto pos = std::upper_bound(items_.begin(), items_.end(), r, better);
    items_.insert(pos, std::move(r));
    if (items_.size() > capacity_) items_.pop_back();
  }

  // Records below this exponent cannot enter the list.
  double threshold() const {
    return items_.size() == capacity_ ? items_.back().exponent.lo : -kInfinity;
  }
  bool full() const { return items_.size() == capacity_; }
  std::vector<WitnessRecord>& items() { return items_; }

 private:
  std::size_t capacity_;
  std::vector<WitnessRecord> items_;
};

struct WorkerResult {
  std::vector<WitnessRecord> top;
  std::uint64_t undecided = 0;
};

template <class Work>
std::vector<WorkerResult> run_workers(unsigned workers, Work work) {
  workers = std::max(1u, workers);
  std::vector<WorkerResult> results(workers);
  if (workers == 1) {
    results[0] = work(0u, 1u);
    return results;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        results[w] = work(w, workers);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

// Merges worker lists, re-scores from scratch, and moves the best witness
// (ties within kTieTolerance broken by height, then coordinates) to the front.
template <class Rescore>
void finish(ExponentEstimate& est, std::vector<WorkerResult>& results, std::size_t top_count,
            Rescore rescore) {
  TopList merged(top_count);
  for (auto& r : results) {
    est.skipped_undecided += r.undecided;
    for (auto& w : r.top) merged.add(std::move(w));
  }
  std::vector<WitnessRecord> top;
  for (auto& w : merged.items()) top.push_back(rescore(w));
  std::sort(top.begin(), top.end(), better);
  if (top.empty()) return;
  const double best_lo = top.front().exponent.lo;
  auto best = top.begin();
  for (auto it = top.begin(); it != top.end(); ++it) {
    const bool tied = it->exponent.lo == best_lo || it->exponent.lo >= best_lo - kTieTolerance;
    if (!tied) continue;
    if (it->height < best->height || (it->height == best->height && it->coords < best->coords)) {
      best = it;
    }
  }
  std::rotate(top.begin(), best, best + 1);
  est.value = top.front().exponent.lo;
  est.top_witnesses = std::move(top);
}

double volume(std::int64_t h_max, unsigned dims) {
  return std::pow(2.0 * static_cast<double>(h_max) + 1.0, static_cast<double>(dims));
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// Double images of xi^1..xi^k with absolute error bounds, or empty when the
// powers do not fit comfortably in a double.
struct DoublePowers {
  std::vector<double> value;
  std::vector<double> error;
};

std::optional<DoublePowers> double_powers(RealOracle& oracle, unsigned k) {
  const auto pw = oracle.powers(k, 80);
  DoublePowers out;
  for (const auto& e : pw) {
    const Rational mid = (e.lo + e.hi) / 2;
    const double v = mid.get_d();
    if (!std::isfinite(v) || std::fabs(v) > 1e60) return std::nullopt;
    const double err = std::max(std::fabs(Rational(e.hi - Rational(v)).get_d()),
                                std::fabs(Rational(Rational(v) - e.lo).get_d()));
    out.value.push_back(v);
    out.error.push_back(err * 2 + 1e-300);
  }
  return out;
}

struct OmegaSearch {
  const RealSpec& spec;
  unsigned k;
  SearchWindow window;
  bool leading_only;
  const SearchOptions& options;
  bool use_range;   // restrict c0 to |P(xi)| < 1
  bool use_filter;  // skip candidates that provably miss the top list

  WorkerResult run(unsigned worker, unsigned workers) const {
    RealOracle oracle(spec);
    std::optional<DoublePowers> dp;
    if (use_range || use_filter) dp = double_powers(oracle, k);
    TopList top(options.top_count);
    WorkerResult result;
    const std::int64_t h_max = window.h_max;
    // Stripes: (degree d, leading coefficient a); constants form one stripe.
    std::size_t stripe = 0;
    for (unsigned d = leading_only ? k : 0; d <= k; ++d) {
      const std::int64_t a_max = d == 0 ? 1 : h_max;
      for (std::int64_t a = 1; a <= a_max; ++a, ++stripe) {
        if (stripe % workers != worker) continue;
        scan_stripe(d, a, oracle, dp ? &*dp : nullptr, top, result.undecided);
      }
    }
    result.top = std::move(top.items());
    return result;
  }

  void scan_stripe(unsigned d, std::int64_t a, RealOracle& oracle, const DoublePowers* dp,
                   TopList& top, std::uint64_t& undecided) const {
    const std::int64_t bound = leading_only ? a : window.h_max;
    std::vector<std::int64_t> c(k + 1, 0);
    c[d] = a;
    // Odometer over c[d-1] .. c[1].
    for (unsigned j = 1; j < d; ++j) c[j] = -bound;
    while (true) {
      scan_prefix(d, bound, c, oracle, dp, top, undecided);
      unsigned j = 1;
      while (j < d && c[j] == bound) c[j++] = -bound;
      if (j >= d) break;
      ++c[j];
    }
  }

  void scan_prefix(unsigned d, std::int64_t bound, std::vector<std::int64_t>& c,
                   RealOracle& oracle, const DoublePowers* dp, TopList& top,
                   std::uint64_t& undecided) const {
    std::int64_t prefix_gcd = 0, prefix_height = 0;
    for (unsigned j = 1; j <= d; ++j) {
      prefix_gcd = std::gcd(prefix_gcd, c[j]);
      prefix_height = std::max(prefix_height, std::abs(c[j]));
    }
    if (d == 0) {
      c[0] = 1;
      consider(c, 1, 0, 0.0, 0.0, false, oracle, top, undecided);
      return;
    }
    double s = 0, mag = 0, err = 0;
    if (dp) {
      for (unsigned j = 1; j <= d; ++j) {
        const double cj = static_cast<double>(c[j]);
        s += cj * dp->value[j - 1];
        mag += std::fabs(cj) * std::fabs(dp->value[j - 1]);
        err += std::fabs(cj) * dp->error[j - 1];
      }
    }
    const double eps = 4 * (err + (d + 3) * 0x1p-52 * mag) + 1e-300;
    std::int64_t lo = -bound, hi = bound;
    if (use_range && dp) {
      const double rl = -s - eps - 1, rh = -s + eps + 1;
      if (rh < static_cast<double>(-bound) || rl > static_cast<double>(bound)) return;
      lo = std::max(lo, static_cast<std::int64_t>(std::ceil(rl)));
      hi = std::min(hi, static_cast<std::int64_t>(std::floor(rh)));
    }
    for (std::int64_t c0 = lo; c0 <= hi; ++c0) {
      const std::int64_t h = std::max(prefix_height, std::abs(c0));
      c[0] = c0;
      const double v = s + static_cast<double>(c0);
      const double e = eps + 0x1p-51 * (std::fabs(s) + std::fabs(static_cast<double>(c0)));
      consider(c, h, prefix_gcd, v, e, dp != nullptr, oracle, top, undecided);
    }
  }

  void consider(const std::vector<std::int64_t>& c, std::int64_t h, std::int64_t prefix_gcd,
                double v, double e, bool have_double, RealOracle& oracle, TopList& top,
                std::uint64_t& undecided) const {
    const std::int64_t c_min = std::max<std::int64_t>(1, ceil_div(window.h_min, h));
    const std::int64_t c_max = window.h_max / h;
    if (c_min > c_max) return;
    if (use_filter && have_double && top.full()) {
      const double v_lo = std::fabs(v) - e;
      if (v_lo > 0) {
        double ub = -kInfinity;
        for (std::int64_t f : {c_min, c_max}) {
          const double fd = static_cast<double>(f);
          ub = std::max(ub, -std::log(fd * v_lo) / std::log(fd * static_cast<double>(h)));
        }
        if (ub + 1e-9 < top.threshold()) return;
      }
    }
    if (std::gcd(prefix_gcd, c[0]) != 1) return;
    const IntegerPolynomial p = IntegerPolynomial::from_int64(c, k);
    const AbsValueResult r = oracle.abs_value(p, options.rel_bits, options.budget_bits);
    if (r.is_undecided()) {
      ++undecided;
      return;
    }
    std::optional<WitnessRecord> best;
    for (std::int64_t f : {c_min, c_max}) {
      WitnessRecord w;
      w.height = Integer(static_cast<long>(f)) * Integer(static_cast<long>(h));
      w.error = r.scaled(Integer(static_cast<long>(f)));
      w.exponent = exponent_interval(w.error, w.height);
      if (!best || w.exponent.lo > best->exponent.lo) {
        for (auto x : c) w.coords.push_back(Integer(static_cast<long>(x)) * f);
        best = std::move(w);
      }
    }
    top.add(std::move(*best));
  }
};

WitnessRecord score_point_with(RealOracle& oracle, const std::vector<Integer>& point,
                               unsigned rel_bits, unsigned budget_bits, bool* undecided) {
  if (point.size() < 2) throw InvalidArgument("score_point: need x_0 and at least one x_m");
  WitnessRecord w;
  w.coords = point;
  w.height = 0;
  for (const auto& x : point) w.height = std::max(w.height, Integer(abs(x)));
  bool any_positive = false;
  Rational lo = 0, hi = 0;
  for (std::size_t m = 1; m < point.size(); ++m) {
    std::vector<Integer> coeffs(m + 1, Integer(0));
    coeffs[0] = -point[m];
    coeffs[m] = point[0];
    const IntegerPolynomial p(std::move(coeffs), static_cast<unsigned>(m));
    if (p.is_zero()) continue;
    const AbsValueResult r = oracle.abs_value(p, rel_bits, budget_bits);
    if (r.is_undecided()) {
      if (undecided) {
        *undecided = true;
        return w;
      }
      throw Undecided("score_point: error undecided for " + w.coords_string());
    }
    if (r.is_positive()) {
      any_positive = true;
      lo = std::max(lo, r.lo);
      hi = std::max(hi, r.hi);
    }
  }
  w.error = any_positive ? AbsValueResult::positive(lo, hi) : AbsValueResult::exact_zero();
  w.exponent = exponent_interval(w.error, w.height);
  return w;
}

Integer round_half_away(const Rational& y) {
  const Rational half(1, 2);
  Integer z;
  if (y >= 0) {
    const Rational t = y + half;
    mpz_fdiv_q(z.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return z;
  }
  const Rational t = -y + half;
  mpz_fdiv_q(z.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  return -z;
}

// Nearest integers to x0 xi^m: one value, or both neighbours of an exact
// half-integer (the witness order then decides). Empty when a tie cannot be
// settled within the budget.
std::vector<Integer> nearest(RealOracle& oracle, const Enclosure& power, const Integer& x0,
                             unsigned m, unsigned budget_bits) {
  const Rational y_lo = x0 * power.lo, y_hi = x0 * power.hi;
  const Integer a = round_half_away(y_lo), b = round_half_away(y_hi);
  if (a == b && y_lo == y_hi) {
    const Rational frac = y_lo - Rational(a);
    if (frac == Rational(1, 2)) return {a, a + 1};
    if (frac == Rational(-1, 2)) return {a - 1, a};
    return {a};
  }
  if (a == b) return {a};
  // Exactly one half-integer boundary t + 1/2 lies in [y_lo, y_hi].
  Integer t;
  const Rational shifted = y_hi - Rational(1, 2);
  mpz_fdiv_q(t.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  std::vector<Integer> coeffs(m + 1, Integer(0));
  coeffs[0] = -(2 * t + 1);
  coeffs[m] = 2 * x0;
  const SignedValue s = oracle.evaluate(IntegerPolynomial(std::move(coeffs), m), 1, budget_bits);
  switch (s.kind) {
    case SignedValue::Kind::Undecided:
      return {};
    case SignedValue::Kind::ExactZero:
      return {t, t + 1};
    case SignedValue::Kind::Interval:
      break;
  }
  return {s.sign() > 0 ? Integer(t + 1) : Integer(t)};
}

void check_window(const SearchWindow& w) {
  if (w.h_min < 2 || w.h_min > w.h_max) {
    throw InvalidArgument("search window must satisfy 2 <= h_min <= h_max, got " + w.to_string());
  }
}

}  // namespace

SearchWindow::SearchWindow(std::int64_t lo, std::int64_t hi) : h_min(lo), h_max(hi) {
  check_window(*this);
}

SearchWindow SearchWindow::tail(std::int64_t h) {
  std::int64_t lo = static_cast<std::int64_t>(std::sqrt(static_cast<double>(h)));
  while (lo * lo < h) ++lo;
  while (lo > 1 && (lo - 1) * (lo - 1) >= h) --lo;
  return SearchWindow(std::max<std::int64_t>(2, lo), h);
}

std::string SearchWindow::to_string() const {
  return "[" + std::to_string(h_min) + ", " + std::to_string(h_max) + "]";
}

std::string to_string(ExponentKind kind) {
  switch (kind) {
    case ExponentKind::Omega:
      return "omega";
    case ExponentKind::OmegaLead:
      return "omega-lead";
    case ExponentKind::Lambda:
      return "lambda";
  }
  return "?";
}

ExponentKind parse_exponent_kind(std::string_view text) {
  if (text == "omega") return ExponentKind::Omega;
  if (text == "omega-lead") return ExponentKind::OmegaLead;
  if (text == "lambda") return ExponentKind::Lambda;
  throw InvalidArgument("unknown exponent kind '" + std::string(text) +
                        "' (expected omega, omega-lead or lambda)");
}

IntegerPolynomial WitnessRecord::polynomial() const {
  return IntegerPolynomial(coords, static_cast<unsigned>(coords.size() - 1));
}

std::string WitnessRecord::coords_string() const {
  std::string out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ',';
    out += coords[i].get_str();
  }
  return out;
}

WitnessRecord score_polynomial(const IntegerPolynomial& p, const RealSpec& spec, unsigned rel_bits,
                               unsigned budget_bits) {
  WitnessRecord w;
  w.coords = p.coefficients();
  w.height = height(p);
  if (w.height < 2) throw InvalidArgument("score_polynomial: height must be >= 2");
  w.error = eval_abs_enclosure(p, spec, rel_bits, budget_bits);
  if (w.error.is_undecided()) {
    throw Undecided("score_polynomial: error undecided for " + p.to_string());
  }
  w.exponent = exponent_interval(w.error, w.height);
  return w;
}

WitnessRecord score_point(const std::vector<Integer>& point, const RealSpec& spec,
                          unsigned rel_bits, unsigned budget_bits) {
  RealOracle oracle(spec);
  WitnessRecord w = score_point_with(oracle, point, rel_bits, budget_bits, nullptr);
  if (w.height < 2) throw InvalidArgument("score_point: height must be >= 2");
  return w;
}

ExponentEstimate omega_estimate(const RealSpec& spec, unsigned k, const SearchWindow& window,
                                bool leading_only, const SearchOptions& options) {
  check_window(window);
  if (k < 1) throw InvalidArgument("omega_estimate: k must be >= 1");
  if (options.top_count < 1) throw InvalidArgument("omega_estimate: top_count must be >= 1");
  ExponentEstimate est;
  est.kind = leading_only ? ExponentKind::OmegaLead : ExponentKind::Omega;
  est.degree = k;
  est.window = window;
  est.spec_echo = spec.to_string();
  est.search_volume = volume(window.h_max, k + 1);
  if (est.search_volume > options.cap) throw CapExceeded(est.search_volume, options.cap);

  auto search = [&](bool use_range) {
    const OmegaSearch s{spec, k, window, leading_only, options, use_range, options.pruning};
    return run_workers(options.workers, [&](unsigned w, unsigned n) { return s.run(w, n); });
  };
  std::vector<WorkerResult> results = search(options.pruning);
  if (options.pruning) {
    // The c0 restriction only drops witnesses of negative exponent, which is
    // harmless once the list is full of positive ones.
    TopList check(options.top_count);
    for (const auto& r : results) {
      for (const auto& w : r.top) check.add(w);
    }
    if (!check.full() || check.threshold() <= 0) results = search(false);
  }
  finish(est, results, options.top_count, [&](const WitnessRecord& w) {
    return score_polynomial(w.polynomial().with_degree_bound(k), spec, options.rel_bits,
                            options.budget_bits);
  });
  return est;
}

ExponentEstimate lambda_estimate(const RealSpec& spec, unsigned n, const SearchWindow& window,
                                 const SearchOptions& options) {
  check_window(window);
  if (n < 1) throw InvalidArgument("lambda_estimate: n must be >= 1");
  if (options.top_count < 1) throw InvalidArgument("lambda_estimate: top_count must be >= 1");
  ExponentEstimate est;
  est.kind = ExponentKind::Lambda;
  est.degree = n;
  est.window = window;
  est.spec_echo = spec.to_string();
  est.search_volume = static_cast<double>(window.h_max);
  if (est.search_volume > options.cap) throw CapExceeded(est.search_volume, options.cap);

  constexpr std::int64_t kChunk = 256;
  auto work = [&](unsigned worker, unsigned workers) {
    RealOracle oracle(spec);
    TopList top(options.top_count);
    WorkerResult result;
    std::vector<Enclosure> pw;
    unsigned pw_bits = 0;
    std::size_t chunk = 0;
    for (std::int64_t start = 1; start <= window.h_max; start += kChunk, ++chunk) {
      if (chunk % workers != worker) continue;
      const std::int64_t stop = std::min(window.h_max, start + kChunk - 1);
      // Enough bits that x0 * width stays well below 1.
      const unsigned bits = 64 + static_cast<unsigned>(std::log2(static_cast<double>(stop)) + 1);
      if (bits != pw_bits) {
        pw = oracle.powers(n, bits);
        pw_bits = bits;
      }
      for (std::int64_t x0 = start; x0 <= stop; ++x0) {
        const Integer x0z(static_cast<long>(x0));
        std::vector<std::vector<Integer>> choices;
        bool skip = false;
        for (unsigned m = 1; m <= n && !skip; ++m) {
          choices.push_back(nearest(oracle, pw[m - 1], x0z, m, options.budget_bits));
          skip = choices.back().empty();
        }
        if (skip) {
          ++result.undecided;
          continue;
        }
        // Odometer over the (rare) tied coordinates.
        std::vector<std::size_t> pick(n, 0);
        while (true) {
          std::vector<Integer> point{x0z};
          Integer h = x0z;
          for (unsigned m = 0; m < n; ++m) {
            point.push_back(choices[m][pick[m]]);
            h = std::max(h, Integer(abs(point.back())));
          }
          if (h >= window.h_min && h <= window.h_max) {
            bool undecided = false;
            WitnessRecord w =
                score_point_with(oracle, point, options.rel_bits, options.budget_bits, &undecided);
            if (undecided) {
              ++result.undecided;
            } else {
              top.add(std::move(w));
            }
          }
          unsigned m = 0;
          while (m < n && pick[m] + 1 == choices[m].size()) pick[m++] = 0;
          if (m == n) break;
          ++pick[m];
        }
      }
    }
    result.top = std::move(top.items());
    return result;
  };
  std::vector<WorkerResult> results = run_workers(options.workers, work);
  finish(est, results, options.top_count, [](const WitnessRecord& w) { return w; });
  return est;
}

double bb_lower_bound(double omega, unsigned k, unsigned n) {
  if (k < 2 || n < k) throw InvalidArgument("bb_lower_bound: need 2 <= k <= n");
  if (std::isnan(omega) || omega < 0) throw InvalidArgument("bb_lower_bound: omega must be >= 0");
  if (std::isinf(omega)) return 1.0 / (k - 1);
  const double kd = k, nd = n;
  return (omega - nd + kd) / ((kd - 1) * omega + nd);
}

nlohmann::json to_json(const WitnessRecord& w) {
  nlohmann::json j;
  j["coeffs"] = w.coords_string();
  j["height"] = w.height.get_str();
  if (w.error.is_zero()) {
    j["error_lo"] = "0";
    j["error_hi"] = "0";
  } else {
    j["error_lo"] = format_decimal(w.error.lo);
    j["error_hi"] = format_decimal(w.error.hi);
  }
  j["exp_lo"] = format_decimal(w.exponent.lo);
  j["exp_hi"] = format_decimal(w.exponent.hi);
  return j;
}

nlohmann::json to_json(const ExponentEstimate& e) {
  nlohmann::json j;
  j["kind"] = to_string(e.kind);
  j["degree"] = e.degree;
  j["xi"] = e.spec_echo;
  j["value"] = format_decimal(e.value);
  j["window"] = {{"h_min", e.window.h_min}, {"h_max", e.window.h_max}};
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : e.top_witnesses) j["witnesses"].push_back(to_json(w));
  j["skipped_undecided"] = e.skipped_undecided;
  return j;
}

}  // namespace leadlift
