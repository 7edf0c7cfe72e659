// padic-verify: runs the verification suites and writes a JSON report.
// Exit codes: 0 all checks pass, 1 some check fails, 2 bad configuration,
// 3 precision exhausted (partial report written).

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "padic/character.hpp"
#include "padic/errors.hpp"
#include "padic/io.hpp"
#include "padic/plancherel.hpp"
#include "padic/suites.hpp"

using namespace padic;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_odd_prime(int p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

std::vector<Rational> rationals_from(const json& j) {
  std::vector<Rational> out;
  if (j.is_array())
    for (const auto& x : j) out.push_back(rational_from_json(x));
  else
    out.push_back(rational_from_json(j));
  return out;
}

// Config file: {"primes": [3, 5] | "prime": 5, "a0": "1/3" | [...],
// "gammas": [...], "tolerance": 1e-9, "precision": 6, "seed": 1,
// "preset": "gamma-example", "functions": [<schwartz json>...]}
void apply_config_file(const std::string& path, SuiteConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"prime", "primes", "a0",     "gammas",   "tolerance",
                                           "precision", "seed", "preset", "functions"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("unknown config field '" + k + "'");
  try {
    if (j.contains("prime")) cfg.primes = {j["prime"].get<int>()};
    if (j.contains("primes")) cfg.primes = j["primes"].get<std::vector<int>>();
    if (j.contains("a0")) cfg.a0 = rationals_from(j["a0"]);
    if (j.contains("gammas")) cfg.gammas = rationals_from(j["gammas"]);
    if (j.contains("tolerance")) cfg.tolerance = j["tolerance"].get<double>();
    if (j.contains("precision")) cfg.precision = j["precision"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
    if (j.contains("preset")) cfg.preset = j["preset"].get<std::string>();
    if (j.contains("functions"))
      for (const auto& f : j["functions"]) cfg.functions.push_back(schwartz_from_json(f));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config field: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

void validate(const SuiteConfig& cfg) {
  if (cfg.primes.empty()) throw ConfigError("no primes configured");
  for (int p : cfg.primes)
    if (!is_odd_prime(p)) throw ConfigError("p = " + std::to_string(p) + " is not an odd prime");
  if (!(cfg.tolerance >= 0)) throw ConfigError("tolerance must be non-negative");
  if (cfg.precision < 1 || cfg.precision > 12) throw ConfigError("precision must lie in [1, 12]");
  if (cfg.preset != "gamma-example") throw ConfigError("unknown group preset '" + cfg.preset + "'");
  for (const Rational& a : cfg.a0)
    if (a.is_zero()) throw ConfigError("a0 must be nonzero");
  for (const Rational& g : cfg.gammas)
    if (g.is_zero()) throw ConfigError("gamma samples must be nonzero");
  for (const SchwartzFunction& f : cfg.functions) {
    try {
      require_group_function(f);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("test function: ") + e.what());
    }
    if (std::find(cfg.primes.begin(), cfg.primes.end(), f.prime()) == cfg.primes.end())
      throw ConfigError("test function prime " + std::to_string(f.prime()) + " is not configured");
  }
}

json conventions() {
  return {{"character", AdditiveCharacter::description()},
          {"measure_k", "Haar measure with mu(O) = 1; Fourier transforms carry the dual measure"},
          {"measure_G", "|a|^-1 da dx dy on (a, x, y)"},
          {"lattice", "r = sum of p^e O with e(e_i) = floor(-v(a0)/2), e(f_i) = -v(a0) - e(e_i)"},
          {"liouville", "push-forward of the self-dual measure of (V, a0 B)"},
          {"orbit_measure", "O_(0,1,gamma) parametrized by (alpha, a) -> f_(alpha, a, gamma/a), dalpha da/|a|"}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification suites for p-adic harmonic analysis"};
  app.require_subcommand(1);

  std::vector<int> primes;
  std::vector<std::string> a0s, gammas;
  std::optional<double> tolerance;
  std::optional<int> precision;
  std::optional<uint64_t> seed;
  std::string config_path, out_path = "padic-report.json", preset;

  app.add_option("--prime", primes, "odd prime(s); comma separated or repeated")->delimiter(',');
  app.add_option("--precision", precision, "Weil-index stabilization bound N_max");
  app.add_option("--a0", a0s, "central parameter(s) a0, e.g. 1, 3, 1/3")->delimiter(',');
  app.add_option("--gamma", gammas, "extra gamma samples for the character checks")->delimiter(',');
  app.add_option("--tolerance", tolerance, "float tolerance for non-exact comparisons (default 1e-9)");
  app.add_option("--config", config_path, "JSON config file; flags override its fields");
  app.add_option("--out", out_path, "report path");
  app.add_option("--seed", seed, "seed for the test-function generators");
  app.add_option("--preset", preset, "group preset (gamma-example)");

  const std::vector<std::pair<std::string, std::string>> subs{
      {"verify-fourier", "inversion, reflection, Parseval and convolution"},
      {"verify-weil", "Weil index modulus, multiplicativity, twisted convolution"},
      {"verify-heisenberg", "lattice-model fixed-point formula"},
      {"verify-orbits", "regularity locus, disintegration, fibered orbit integrals"},
      {"verify-plancherel", "characters, vanishing and Plancherel on the example group"},
      {"all", "every suite"}};
  for (const auto& [name, help] : subs) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  SuiteConfig cfg;
  cfg.primes = {5};
  try {
    if (!config_path.empty()) apply_config_file(config_path, cfg);
    if (!primes.empty()) cfg.primes = primes;
    if (!a0s.empty()) {
      cfg.a0.clear();
      for (const auto& s : a0s) cfg.a0.push_back(parse_rational(s));
    }
    if (!gammas.empty()) {
      cfg.gammas.clear();
      for (const auto& s : gammas) cfg.gammas.push_back(parse_rational(s));
    }
    if (tolerance) cfg.tolerance = *tolerance;
    if (precision) cfg.precision = *precision;
    if (seed) cfg.seed = *seed;
    if (!preset.empty()) cfg.preset = preset;
    validate(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  json report{{"version", kVersion}, {"subcommand", sub}, {"config", to_json(cfg)}, {"conventions", conventions()}};
  json checks = json::array();
  bool all_pass = true;
  int code = 0;
  auto run = [&](const std::string& name, auto&& fn) {
    if (sub != "all" && sub != "verify-" + name) return;
    const SuiteResult r = fn();
    for (const Check& c : r.checks) {
      json j = to_json(c);
      j["suite"] = r.suite;
      checks.push_back(j);
      all_pass = all_pass && c.pass;
    }
    std::cout << r.suite << ": " << std::count_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; })
              << "/" << r.checks.size() << " checks pass\n";
  };
  try {
    run("fourier", [&] { return fourier_suite(cfg); });
    run("weil", [&] { return weil_suite(cfg); });
    run("heisenberg", [&] { return heisenberg_suite(cfg); });
    run("orbits", [&] { return orbits_suite(cfg); });
    run("plancherel", [&] { return plancherel_suite(cfg); });
    code = all_pass ? 0 : 1;
  } catch (const PrecisionExhausted& e) {
    report["error"] = std::string("precision exhausted: ") + e.what();
    std::cerr << "precision exhausted: " << e.what() << "\n";
    all_pass = false;
    code = 3;
  } catch (const std::exception& e) {
    report["error"] = e.what();
    std::cerr << "error: " << e.what() << "\n";
    all_pass = false;
    code = 1;
  }
  report["checks"] = checks;
  report["passed"] = all_pass;
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 2;
  }
  out << report.dump(2) << "\n";
  std::cout << (all_pass ? "PASS" : "FAIL") << " (report: " << out_path << ")\n";
  return code;
}
