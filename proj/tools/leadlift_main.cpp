#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "leadlift/error.hpp"
#include "leadlift/exponents.hpp"
#include "leadlift/format.hpp"
#include "leadlift/transference.hpp"
#include "leadlift/verifier.hpp"

namespace {

using json = nlohmann::json;
using namespace leadlift;

struct Globals {
  std::string config;
  std::string out;
  std::string csv;
  std::optional<unsigned> workers;
  std::optional<std::uint64_t> seed;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open '" + path + "' for writing");
  f << text;
}

void emit(const Globals& g, const json& j) { write_text(g.out, j.dump(2) + "\n"); }

SearchWindow window_arg(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InvalidArgument("window must look like 'h_min,h_max'");
  return SearchWindow(std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1)));
}

json exact_and_decimal(const Rational& q) {
  return {{"exact", to_string(q)}, {"decimal", format_decimal(q)}};
}

int finish_report(const Globals& g, Report report) {
  emit(g, report.to_json());
  if (!g.csv.empty()) write_text(g.csv, report.to_csv());
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"leadlift: lead-lift transference toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "JSON config file (corpus)");
  app.add_option("--out", g.out, "write the JSON output here instead of stdout");
  app.add_option("--csv", g.csv, "write a CSV summary of report checks here");
  app.add_option("--workers", g.workers, "worker threads for searches")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for the theorem property suite");

  unsigned k = 1, deg = 1, n = 2;
  std::string nodes_text, poly_text, xi_text, kind_text = "omega", check_text;
  std::string m_text, omega_window = "10,100", lambda_window = "2,10000", window_text;
  std::int64_t hmin = 2, hmax = 100;
  double cap = 1e8;
  std::size_t trials = 10000, top = 10;

  auto* constants = app.add_subcommand("constants", "C1, C2 and M for a node set");
  constants->add_option("--k", k, "degree bound")->required();
  constants->add_option("--nodes", nodes_text, "comma-separated distinct integers (default 0..k)");

  auto* lift = app.add_subcommand("lift", "lead-lift a polynomial toward xi");
  lift->add_option("--poly", poly_text, "coefficients, constant term first")->required();
  lift->add_option("--k", k, "degree bound")->required();
  lift->add_option("--xi", xi_text, "number spec")->required();
  lift->add_option("--nodes", nodes_text, "node set (default 0..k)");
  lift->add_option("--M", m_text, "integer M >= the least admissible value");

  auto* estimate = app.add_subcommand("estimate", "windowed exponent estimate");
  estimate->add_option("--xi", xi_text, "number spec")->required();
  estimate->add_option("--kind", kind_text, "omega | omega-lead | lambda");
  estimate->add_option("--deg", deg, "k for omega, n for lambda")->required();
  estimate->add_option("--hmin", hmin, "smallest witness height")->required();
  estimate->add_option("--hmax", hmax, "largest witness height")->required();
  estimate->add_option("--cap", cap, "limit on the nominal search volume");
  estimate->add_option("--top", top, "number of witnesses to report");

  auto* verify = app.add_subcommand("verify", "run a single check");
  verify->add_option("--check", check_text, "theorem | transference | lift | estimate")->required();
  verify->add_option("--xi", xi_text, "number spec");
  verify->add_option("--k", k, "degree k");
  verify->add_option("--n", n, "lambda order n (transference)");
  verify->add_option("--kind", kind_text, "estimate kind");
  verify->add_option("--nodes", nodes_text, "node set (lift)");
  verify->add_option("--window", window_text, "h_min,h_max (lift, estimate)");
  verify->add_option("--omega-window", omega_window, "h_min,h_max");
  verify->add_option("--lambda-window", lambda_window, "h_min,h_max");
  verify->add_option("--trials", trials, "random polynomials per node set (theorem)");
  verify->add_option("--cap", cap, "limit on the nominal search volume");

  app.add_subcommand("corpus", "run the configured corpus (built-in default without --config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto nodes_for = [&](unsigned kk) {
      return nodes_text.empty() ? NodeSet::standard(kk) : NodeSet::parse(nodes_text);
    };
    SearchOptions options;
    options.cap = cap;
    options.top_count = top;
    if (g.workers) options.workers = *g.workers;

    if (*constants) {
      const NodeSet ns = nodes_for(k);
      if (ns.k() != k) throw InvalidArgument("--nodes must list k + 1 integers");
      const TransferenceConstants c = compute_constants(ns);
      emit(g, {{"nodes", ns.to_string()},
               {"k", k},
               {"C1", exact_and_decimal(c.c1)},
               {"C2", exact_and_decimal(c.c2)},
               {"M", c.m.get_str()}});
      return 0;
    }
    if (*lift) {
      const NodeSet ns = nodes_for(k);
      if (ns.k() != k) throw InvalidArgument("--nodes must list k + 1 integers");
      std::optional<Integer> m;
      if (!m_text.empty()) m = Integer(m_text, 10);
      const Transference t(ns, m);
      const IntegerPolynomial p = IntegerPolynomial::parse(poly_text, k);
      const RealSpec spec = RealSpec::parse(xi_text);
      const LiftResult r = t.lift(p, spec);
      json j = {{"P", p.to_string()},
                {"nodes", ns.to_string()},
                {"M", t.m().get_str()},
                {"index", r.index},
                {"node", r.node.get_str()},
                {"node_value", to_string(r.node_value)},
                {"Q", r.lifted.to_string()},
                {"xi_i", r.transformed_spec.to_string()},
                {"excluded", r.excluded},
                {"leading_dominant", r.leading_dominant},
                {"leading_identity", r.leading_identity},
                {"evaluation_identity",
                 r.evaluation_identity ? json(*r.evaluation_identity) : json(nullptr)}};
      emit(g, j);
      return r.leading_dominant && r.leading_identity && r.evaluation_identity.value_or(true) ? 0 : 1;
    }
    if (*estimate) {
      const RealSpec spec = RealSpec::parse(xi_text);
      const ExponentKind kind = parse_exponent_kind(kind_text);
      const SearchWindow w(hmin, hmax);
      const ExponentEstimate e = kind == ExponentKind::Lambda
                                     ? lambda_estimate(spec, deg, w, options)
                                     : omega_estimate(spec, deg, w, kind == ExponentKind::OmegaLead,
                                                      options);
      emit(g, to_json(e));
      return 0;
    }
    if (*verify) {
      Report report;
      report.config_echo = {{"check", check_text}};
      const auto spec = [&] {
        if (xi_text.empty()) throw InvalidArgument("--xi is required for this check");
        return RealSpec::parse(xi_text);
      };
      if (check_text == "theorem") {
        TheoremSuiteOptions o;
        o.k_list = {k};
        o.trials = trials;
        if (g.seed) o.seed = *g.seed;
        if (!nodes_text.empty()) {
          o.k_list.clear();
          o.node_sets.push_back(NodeSet::parse(nodes_text));
        }
        report.checks = run_theorem_suite(o);
      } else if (check_text == "transference") {
        report.checks.push_back(run_transference_check(spec(), k, n, window_arg(omega_window),
                                                       window_arg(lambda_window), options));
      } else if (check_text == "lift") {
        if (window_text.empty()) throw InvalidArgument("--window is required for the lift check");
        report.checks.push_back(
            run_lift_transfer_check(spec(), k, nodes_for(k), window_arg(window_text), options));
      } else if (check_text == "estimate") {
        if (window_text.empty()) throw InvalidArgument("--window is required for estimates");
        report.checks.push_back(run_estimate_check(spec(), parse_exponent_kind(kind_text), k,
                                                   window_arg(window_text), {}, options));
      } else {
        throw InvalidArgument("unknown check '" + check_text + "'");
      }
      return finish_report(g, std::move(report));
    }
    // corpus
    CorpusConfig config = CorpusConfig::defaults();
    if (!g.config.empty()) {
      std::ifstream f(g.config);
      if (!f) throw InvalidArgument("cannot read config '" + g.config + "'");
      json j;
      try {
        j = json::parse(f);
      } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
      }
      config = CorpusConfig::from_json(j);
    }
    if (g.workers) config.workers = *g.workers;
    if (g.seed && config.theorem) config.theorem->seed = *g.seed;
    return finish_report(g, run_corpus(config));
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
