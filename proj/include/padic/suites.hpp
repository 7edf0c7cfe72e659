#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "padic/cyclotomic.hpp"
#include "padic/schwartz.hpp"

namespace padic {

struct SuiteConfig {
  std::vector<int> primes{3, 5, 7};
  std::vector<Rational> a0;       // empty: {1, ϖ, non-square unit} per prime
  std::vector<Rational> gammas;   // extra γ samples for the character checks
  std::vector<SchwartzFunction> functions;  // extra test functions on G
  double tolerance = 1e-9;
  int precision = 6;              // Weil-index stabilization bound N_max
  uint64_t seed = 20240611;
  std::string preset = "gamma-example";
};

// One identity instance.  lhs/rhs are exact values (or summaries for
// function-valued identities); delta is the float distance.  exact checks
// pass on exact equality, the others on delta < tolerance (so tolerance 0 fails them).
struct Check {
  std::string name;
  std::string ref;  // the identity being checked
  std::string lhs, rhs;
  double delta = 0;
  bool exact = true;
  bool pass = false;
  std::string group;  // acceptance bucket, e.g. "fourier"
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  bool passed() const;
};

SuiteResult fourier_suite(const SuiteConfig& cfg, int functions = 200);
SuiteResult weil_suite(const SuiteConfig& cfg, int triples = 20);
SuiteResult heisenberg_suite(const SuiteConfig& cfg);
SuiteResult orbits_suite(const SuiteConfig& cfg);
// The example group: character formula at s = 1, vanishing near far split
// elements, the Plancherel identity; each also emits "dual" checks
// comparing the kernel-matrix trace with the diagonal integral.
SuiteResult character_suite(const SuiteConfig& cfg, int functions = 10);
SuiteResult vanishing_suite(const SuiteConfig& cfg);
SuiteResult plancherel_identity_suite(const SuiteConfig& cfg, int functions = 10);
SuiteResult plancherel_suite(const SuiteConfig& cfg, int functions = 10);  // all three

nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const SuiteConfig& cfg);

// Units a with |a − 1| = 1 (so a ≢ 1 mod ϖ), small height first.
std::vector<Rational> far_units(int p, std::size_t count = 3);

}  // namespace padic
