#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptroots/counter.hpp"
#include "ptroots/oracle.hpp"
#include "ptroots/poly_input.hpp"

namespace {

using nlohmann::json;

ptroots::Engine engine_from(const std::string& name) {
  if (name == "tree") return ptroots::Engine::Tree;
  if (name == "smallp") return ptroots::Engine::SmallP;
  return ptroots::Engine::Auto;
}

json stats_json(const ptroots::CountStats& stats) {
  json s;
  s["content_valuation"] = stats.content_valuation;
  s["engine"] = stats.engine;
  s["max_level"] = stats.max_level;
  s["nodes"] = stats.nodes;
  s["normalized_coeffs"] = stats.normalized_coeffs;
  s["wall_ms"] = stats.wall_ms;
  return s;
}

json node_json(const ptroots::NodeRecord& rec) {
  json n;
  n["contribution"] = rec.contribution.get_str();
  n["gen_degrees"] = rec.gen_degrees;
  n["level"] = rec.level;
  n["multiplicity"] = rec.multiplicity;
  n["path"] = rec.path;
  n["s"] = rec.s_value;
  n["status"] = rec.status;
  return n;
}

mpz_class parse_prime(const std::string& text) {
  std::size_t k = 0;
  if (!text.empty() && text[0] == '+') ++k;
  if (k == text.size()) throw ptroots::InvalidModulusError("empty prime");
  for (std::size_t i = k; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9')
      throw ptroots::InvalidModulusError(text + " is not a valid prime");
  return mpz_class(text.substr(k), 10);
}

int run_count(const std::string& prime_s, unsigned exp,
              const std::string& poly_s, bool as_json, bool trace, bool verify,
              const std::string& force, unsigned threads) {
  if (exp < 1) {
    std::cerr << "the exponent must be at least 1\n";
    return 2;
  }
  ptroots::PrimePowerModulus mod(parse_prime(prime_s), exp);
  std::vector<mpz_class> coeffs = ptroots::parse_poly_text(poly_s);

  ptroots::EngineOptions opts;
  opts.force = engine_from(force);
  opts.threads = threads;
  opts.collect_tree = trace;
  ptroots::CountResult res = ptroots::count_roots(coeffs, mod, opts);

  int exit_code = 0;
  if (verify) {
    try {
      mpz_class truth = ptroots::brute_force_count(coeffs, mod);
      if (truth != res.total) {
        std::cerr << "verification mismatch: engine " << res.total.get_str()
                  << ", oracle " << truth.get_str() << "\n";
        exit_code = 3;
      }
    } catch (const ptroots::BudgetExceededError&) {
      std::cerr << "verification skipped: modulus exceeds the oracle budget\n";
    }
  }

  if (as_json) {
    json out;
    out["count"] = res.total.get_str();
    out["p"] = mod.prime().get_str();
    out["stats"] = stats_json(res.stats);
    out["t"] = mod.exponent();
    if (trace) {
      json nodes = json::array();
      for (const auto& rec : res.tree) nodes.push_back(node_json(rec));
      out["tree"] = nodes;
    }
    std::cout << out.dump() << "\n";
  } else {
    std::cout << res.total.get_str() << "\n";
  }
  return exit_code;
}

int run_series(const std::string& prime_s, unsigned max_exp,
               const std::string& poly_s, bool as_json, unsigned threads) {
  mpz_class p = parse_prime(prime_s);
  ptroots::PrimePowerModulus validate(p, 1);
  std::vector<mpz_class> coeffs = ptroots::parse_poly_text(poly_s);

  ptroots::EngineOptions opts;
  opts.threads = threads;
  std::vector<mpz_class> seq =
      ptroots::poincare_truncated(coeffs, p, max_exp, opts);

  if (as_json) {
    json out;
    json cs = json::array();
    for (const auto& n : seq) cs.push_back(n.get_str());
    out["coefficients"] = cs;
    out["max_exp"] = max_exp;
    out["p"] = p.get_str();
    std::cout << out.dump() << "\n";
  } else {
    for (const auto& n : seq) std::cout << n.get_str() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact root counting for integer polynomials over Z/(p^t)"};
  app.require_subcommand(1);

  std::string prime_s, poly_s;
  std::string force = "auto";
  unsigned exp = 1, max_exp = 0, threads = 1;
  bool as_json = false, trace = false, verify = false;

  CLI::App* count = app.add_subcommand("count", "Count roots of f in Z/(p^t)");
  count->add_option("--prime", prime_s, "Prime p")->required();
  count->add_option("--exp", exp, "Exponent t >= 1")->required();
  count->add_option("--poly", poly_s,
                    "Polynomial: coefficient list or expression in x")
      ->required();
  count->add_flag("--json", as_json, "JSON output");
  count->add_flag("--trace", trace, "Include per-node tree records");
  count->add_flag("--verify", verify, "Cross-check against the brute oracle");
  count->add_option("--force-engine", force, "tree|smallp|auto")
      ->check(CLI::IsMember({"tree", "smallp", "auto"}));
  count->add_option("--threads", threads, "Worker threads for the tree engine");

  CLI::App* series =
      app.add_subcommand("series", "Truncated series of root counts N_0..N_T");
  series->add_option("--prime", prime_s, "Prime p")->required();
  series->add_option("--max-exp", max_exp, "Largest exponent T")->required();
  series->add_option("--poly", poly_s,
                     "Polynomial: coefficient list or expression in x")
      ->required();
  series->add_flag("--json", as_json, "JSON output");
  series->add_option("--threads", threads, "Worker threads for the tree engine");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (count->parsed())
      return run_count(prime_s, exp, poly_s, as_json, trace, verify, force,
                       threads);
    return run_series(prime_s, max_exp, poly_s, as_json, threads);
  } catch (const ptroots::InvalidModulusError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ptroots::PolyParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ptroots::SmallPrimeOnlyError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ptroots::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
