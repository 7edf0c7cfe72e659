#include "padic/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "padic/errors.hpp"
#include "padic/generators.hpp"
#include "padic/heisenberg.hpp"
#include "padic/io.hpp"
#include "padic/orbits.hpp"
#include "padic/plancherel.hpp"
#include "padic/weil.hpp"

namespace padic {

namespace {

Rational p_pow(int p, int e) { return e >= 0 ? Rational(ipow(p, e)) : Rational(1, ipow(p, -e)); }

std::string tag(int p, const std::string& rest = "") { return "[p=" + std::to_string(p) + rest + "]"; }

Check scalar_check(std::string group, std::string name, std::string ref, const CyclotomicValue& lhs,
                   const CyclotomicValue& rhs, bool exact, double tol) {
  Check c;
  c.group = std::move(group);
  c.name = std::move(name);
  c.ref = std::move(ref);
  c.lhs = lhs.str();
  c.rhs = rhs.str();
  c.delta = (lhs - rhs).abs();
  c.exact = exact;
  c.pass = exact ? lhs == rhs : c.delta < tol;
  return c;
}

double table_distance(const SchwartzFunction& a, const SchwartzFunction& b) {
  const SchwartzFunction d = (a - b).canonical();
  double worst = 0;
  for (const auto& v : d.table()) worst = std::max(worst, v.abs());
  return worst;
}

Check function_check(std::string group, std::string name, std::string ref, const SchwartzFunction& lhs,
                     const SchwartzFunction& rhs, std::string lhs_label, std::string rhs_label) {
  Check c;
  c.group = std::move(group);
  c.name = std::move(name);
  c.ref = std::move(ref);
  c.lhs = std::move(lhs_label);
  c.rhs = std::move(rhs_label);
  c.delta = table_distance(lhs, rhs);
  c.exact = true;
  c.pass = lhs == rhs;
  return c;
}

Check flag_check(std::string group, std::string name, std::string ref, bool lhs, bool rhs) {
  Check c;
  c.group = std::move(group);
  c.name = std::move(name);
  c.ref = std::move(ref);
  c.lhs = lhs ? "true" : "false";
  c.rhs = rhs ? "true" : "false";
  c.delta = lhs == rhs ? 0 : 1;
  c.pass = lhs == rhs;
  return c;
}

std::vector<Rational> central_parameters(const SuiteConfig& cfg, int p) {
  if (!cfg.a0.empty()) return cfg.a0;
  return {Rational(1), Rational(p), Rational(non_square_unit(p))};
}

// Diagonal form whose coefficients a₀d_i have valuation in [lo, hi]; keeps
// the twisted-convolution windows desk-sized.
QuadraticForm scaled_diagonal(Rng& rng, int p, int n, const Rational& a0, int lo, int hi) {
  std::uniform_int_distribution<int> unit(1, p - 1), v(lo, hi);
  RVector d;
  for (int i = 0; i < n; ++i) d.push_back(Rational(unit(rng)) * p_pow(p, v(rng) - valuation(a0, p)));
  return QuadraticForm::diagonal(p, d);
}

QuadraticForm random_diagonal(Rng& rng, int p, int n) {
  std::uniform_int_distribution<int> unit(1, p - 1), v(-1, 2);
  RVector d;
  for (int i = 0; i < n; ++i) d.push_back(Rational(unit(rng)) * p_pow(p, v(rng)));
  return QuadraticForm::diagonal(p, d);
}

std::string form_label(const QuadraticForm& Q) {
  std::string s = "diag(";
  for (std::size_t i = 0; i < Q.dim(); ++i) s += (i ? "," : "") + Q.gram()(i, i).str();
  return s + ")";
}

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<Rational> far_units(int p, std::size_t count) {
  std::vector<Rational> out;
  for (int64_t h = 2; out.size() < count; ++h)
    for (int64_t num = 1; num <= h; ++num)
      for (int64_t den = 1; den <= h; ++den) {
        if (std::max(num, den) != h || std::gcd(num, den) != 1) continue;
        if (num % p == 0 || den % p == 0 || mod_floor(num - den, p) == 0) continue;
        if (out.size() < count) out.emplace_back(num, den);
      }
  return out;
}

// ---------------------------------------------------------------------------

SuiteResult fourier_suite(const SuiteConfig& cfg, int functions) {
  SuiteResult res{"fourier", {}};
  Rng rng(cfg.seed ^ 0x1f0u);
  const std::size_t np = cfg.primes.size();
  for (int i = 0; i < functions; ++i) {
    const int p = cfg.primes[static_cast<std::size_t>(i) % np];
    const int n = 1 + (i / static_cast<int>(np)) % 3;
    auto [M, m] = random_window(rng, p, n, 400);
    const SchwartzFunction f = random_schwartz(rng, p, n, M, m).canonical();
    const SchwartzFunction F = fourier(f);
    const std::string t = tag(p, ",n=" + std::to_string(n) + ",#" + std::to_string(i));
    const InversionReport inv = fourier_inverse_check(f);
    res.checks.push_back(scalar_check("fourier", "inversion" + t, "phi(0) = integral of the transform",
                                      inv.value_at_zero, inv.dual_integral, true, 0));
    res.checks.push_back(function_check("fourier", "reflection" + t, "double transform reflects", fourier(F),
                                        f.reflected(), "F(F(phi))", "phi(-x)"));
    res.checks.push_back(scalar_check("fourier", "parseval" + t, "L2 norm preserved", (f * f.conj()).integral(),
                                      (F * F.conj()).integral(), true, 0));
    // the second factor lives inside f's window, so the convolution stays on it
    std::uniform_int_distribution<int> outer(0, M);
    const int M2 = outer(rng);
    std::uniform_int_distribution<int> inner(std::min(-M2, m), m);
    const SchwartzFunction g = random_schwartz(rng, p, n, M2, std::max(-M2, inner(rng)));
    res.checks.push_back(function_check("fourier", "convolution" + t, "transform of a convolution",
                                        fourier(convolve(f, g)), F * fourier(g), "F(phi*psi)", "F(phi)F(psi)"));
  }
  return res;
}

SuiteResult weil_suite(const SuiteConfig& cfg, int triples) {
  SuiteResult res{"weil", {}};
  Rng rng(cfg.seed ^ 0x3e11u);
  const double unit_tol = std::min(cfg.tolerance, 1e-12);
  for (int p : cfg.primes) {
    for (const Rational& a0 : central_parameters(cfg, p)) {
      const std::string t0 = tag(p, ",a0=" + a0.str());
      for (int n = 1; n <= 4; ++n) {
        const QuadraticForm Q = random_diagonal(rng, p, n);
        const WeilIndexResult w = weil_index(Q, a0, cfg.precision);
        Check c;
        c.group = "weil";
        c.name = "modulus" + t0 + form_label(Q);
        c.ref = "|gamma| = 1";
        c.lhs = std::to_string(w.value.abs());
        c.rhs = "1";
        c.exact = false;
        c.delta = std::abs(w.value.abs() - 1.0);
        c.pass = c.delta < unit_tol;
        res.checks.push_back(c);
      }
      for (int trial = 0; trial < 3; ++trial) {
        std::uniform_int_distribution<int> d1(1, 3);
        const int n1 = d1(rng);
        std::uniform_int_distribution<int> d2(1, 4 - n1);
        const QuadraticForm Q1 = random_diagonal(rng, p, n1), Q2 = random_diagonal(rng, p, d2(rng));
        res.checks.push_back(scalar_check("weil", "multiplicativity" + t0 + form_label(Q1) + "+" + form_label(Q2),
                                          "gamma(Q1 + Q2) = gamma(Q1) gamma(Q2)",
                                          weil_index(Q1.direct_sum(Q2), a0, cfg.precision).value,
                                          weil_index(Q1, a0, cfg.precision).value *
                                              weil_index(Q2, a0, cfg.precision).value,
                                          true, 0));
      }
    }
  }
  // twisted convolution: triples cycle through primes and central parameters
  for (int i = 0; i < triples; ++i) {
    const int p = cfg.primes[static_cast<std::size_t>(i) % cfg.primes.size()];
    const auto a0s = central_parameters(cfg, p);
    const Rational a0 = a0s[static_cast<std::size_t>(i / static_cast<int>(cfg.primes.size())) % a0s.size()];
    // a₀G stays integral with small valuations so the windows stay desk-sized
    const RMatrix mixed{{Rational(1), Rational(1)}, {Rational(1), Rational(p)}};
    QuadraticForm Q = (i % 5 == 4) ? QuadraticForm(p, mixed.scaled(a0.inverse()))
                                   : scaled_diagonal(rng, p, 1 + i % 2, a0, i % 2 ? 0 : -1, i % 2 ? 0 : 2);
    const int n = static_cast<int>(Q.dim());
    const SchwartzFunction phi = random_schwartz(rng, p, n, 1, n == 1 ? 1 : 0);
    const TwistedConvolutionReport r = twisted_convolution_check(Q, a0, phi);
    const WeilIndexResult w = weil_index(Q, a0, cfg.precision);
    Check c = scalar_check("weil",
                           "twisted-convolution" + tag(p, ",a0=" + a0.str() + ",#" + std::to_string(i)) +
                               " stabilization-level=" + std::to_string(w.level),
                           "phi * exp(Q) integral = c_Q gamma(Q) integral phi", r.lhs, r.rhs, false,
                           cfg.tolerance);
    res.checks.push_back(c);
  }
  return res;
}

SuiteResult heisenberg_suite(const SuiteConfig& cfg) {
  SuiteResult res{"heisenberg", {}};
  Rng rng(cfg.seed ^ 0x4e15u);
  for (int p : cfg.primes) {
    for (const Rational& a0 : central_parameters(cfg, p)) {
      LatticeModel L(p, 1, a0);
      std::vector<std::pair<std::string, RMatrix>> elements{{"s=1", RMatrix::identity(2)}};
      for (const Rational& a : far_units(p))
        elements.emplace_back("s=diag(" + a.str() + ")", RMatrix{{a, Rational(0)}, {Rational(0), a.inverse()}});
      for (const auto& [label, s] : elements) {
        const bool central = label == "s=1";
        const SchwartzFunction beta = central ? random_schwartz(rng, p, 3, 0, 1) : random_schwartz(rng, p, 1, 1, 1);
        const FixedPointReport r = verify_fixed_point_formula(L, s, beta);
        res.checks.push_back(scalar_check("heisenberg", "fixed-point" + tag(p, ",a0=" + a0.str()) + label,
                                          "Tr sigma(s)pi(beta) = Phi(s) |det(1-s)|^-1/2 orbital", r.lhs, r.rhs,
                                          false, cfg.tolerance));
      }
    }
  }
  return res;
}

SuiteResult orbits_suite(const SuiteConfig& cfg) {
  SuiteResult res{"orbits", {}};
  Rng rng(cfg.seed ^ 0x0b17u);
  const LieAlgebra L = LieAlgebra::gamma_example();
  for (int p : cfg.primes) {
    const Rational vals[] = {Rational(0), Rational(1), Rational(-1), Rational(p), Rational(1, p)};
    bool locus = true, strong = true;
    for (const Rational& a : vals)
      for (const Rational& b : vals)
        for (const Rational& c : vals) {
          const RVector f{a, b, c};
          const bool expect = !b.is_zero() && !c.is_zero();
          if (in_omega_G(f) != expect) locus = false;
          if (regularity_report(L, f).strongly_regular != (!b.is_zero() || !c.is_zero())) strong = false;
        }
    res.checks.push_back(flag_check("orbits", "omega-locus" + tag(p), "strongly regular, closed orbit <=> beta, gamma != 0",
                                    locus, true));
    res.checks.push_back(flag_check("orbits", "pfaffian-regularity" + tag(p),
                                    "pfaffian criterion <=> (beta, gamma) != 0", strong, true));
    for (auto [M, m] : {std::pair{0, 0}, {0, 1}, {1, 0}, {1, 1}}) {
      if (p > 5 && M + m > 1) continue;
      const SchwartzFunction F = random_schwartz(rng, p, 2, M, m, 1, 0.6);
      const DisintegrationReport r = measure_disintegration_check(F);
      Check c = scalar_check("orbits", "disintegration" + tag(p, ",M=" + std::to_string(M) + ",m=" + std::to_string(m)),
                             "integral over u* = integral over gamma of hyperbola integrals", r.lhs, r.rhs, true, 0);
      c.pass = c.pass && r.boundary_vanishes && r.tail_matches;
      res.checks.push_back(c);
    }
  }
  const Rational gammas[] = {Rational(1), Rational(3, 1), Rational(2), Rational(1, 3), Rational(5)};
  for (int i = 0; i < 5; ++i) {
    const int p = cfg.primes[static_cast<std::size_t>(i) % cfg.primes.size()];
    const Rational& gamma = gammas[i];
    const int M = (p == 3 && i % 2) ? 1 : 0, m = i == 3 ? 0 : 1;
    const SchwartzFunction F = random_schwartz(rng, p, 3, M, m, 1, 0.5);
    const FiberedReport r = fibered_orbit_integral_check(F, gamma);
    res.checks.push_back(scalar_check("fibered", "fibered-orbit" + tag(p, ",gamma=" + gamma.str()),
                                      "orbit integral = G/H integral of fiber integrals", r.chart_side,
                                      r.fibered_side, true, 0));
  }
  return res;
}

namespace {

void dual_check(SuiteResult& res, const std::string& name, const CyclotomicValue& kernel, const CyclotomicValue& closed) {
  res.checks.push_back(scalar_check("dual", "dual-method " + name, "kernel-matrix trace = diagonal integral", kernel,
                                    closed, true, 0));
}

}  // namespace

SuiteResult character_suite(const SuiteConfig& cfg, int functions) {
  SuiteResult res{"character", {}};
  Rng rng(cfg.seed ^ 0x91a2u);
  for (int p : cfg.primes) {
    for (int i = 0; i < functions; ++i) {
      const int M = (p == 3 && i % 2) ? 1 : 0;
      const SchwartzFunction phi = random_group_function(rng, p, M, 1, Rational(1), 1, i % 2, 0.5);
      std::vector<Rational> gammas;
      for (int g : {-1, 0, 1}) gammas.push_back(Rational(1 + i % (p - 1)) * p_pow(p, g));
      gammas.insert(gammas.end(), cfg.gammas.begin(), cfg.gammas.end());
      for (const CharacterFormulaReport& r : character_formula_check_s1(gammas, phi)) {
        const std::string t = tag(p, ",#" + std::to_string(i) + ",gamma=" + r.gamma.str());
        res.checks.push_back(scalar_check("character", "character-formula" + t,
                                          "Theta_gamma(phi) = orbital integral of (phi o exp)^", r.kernel_trace,
                                          r.orbital, false, cfg.tolerance));
        dual_check(res, "character" + t, r.kernel_trace, r.closed_form);
      }
    }
  }
  return res;
}

SuiteResult vanishing_suite(const SuiteConfig& cfg) {
  SuiteResult res{"vanishing", {}};
  Rng rng(cfg.seed ^ 0x7a21u);
  for (int p : cfg.primes) {
    int idx = 0;
    for (const Rational& a_s : far_units(p, 3)) {
      for (int M : {0, 1}) {
        const SchwartzFunction phi = random_group_function(rng, p, M, 1, a_s, 1, idx % 2, 0.6);
        std::vector<Rational> gammas;
        for (int g : {-2, 0, 1}) gammas.push_back(p_pow(p, g));
        gammas.insert(gammas.end(), cfg.gammas.begin(), cfg.gammas.end());
        for (const Rational& gamma : gammas) {
          const VanishingReport r = character_vanishing_check(gamma, a_s, 1, phi);
          const std::string t = tag(p, ",s=" + a_s.str() + ",#" + std::to_string(idx) + ",gamma=" + r.gamma.str());
          Check c = scalar_check("vanishing", "vanishing" + t, "Theta_gamma = 0 near fixed-point-free s",
                                 r.kernel_trace, CyclotomicValue(), true, 0);
          c.pass = c.pass && r.tube_separated;
          res.checks.push_back(c);
          dual_check(res, "vanishing" + t, r.kernel_trace, r.closed_form);
        }
        ++idx;
      }
    }
    // control: a tube around the identity carries a nonzero character
    const SchwartzFunction phi = random_group_function(rng, p, 0, 1, Rational(1), 1, 0, 1.0);
    const VanishingReport r = character_vanishing_check(Rational(1), Rational(1), 1, phi);
    Check c = scalar_check("vanishing", "identity-tube-control" + tag(p), "Theta_gamma != 0 near s = 1",
                           r.kernel_trace, CyclotomicValue(), true, 0);
    c.pass = !r.tube_separated && !r.kernel_trace.is_zero();
    res.checks.push_back(c);
  }
  return res;
}

SuiteResult plancherel_identity_suite(const SuiteConfig& cfg, int functions) {
  SuiteResult res{"plancherel", {}};
  Rng rng(cfg.seed ^ 0x5eedu);
  for (int p : cfg.primes) {
    std::vector<std::pair<std::string, SchwartzFunction>> phis;
    for (int i = 0; i < functions; ++i) {
      const int M = i % 2, m = (p == 3 && i % 4 == 3) ? 2 : 1;
      // every third function misses the identity, so φ(1) = 0
      const Rational centre = i % 3 == 2 ? Rational(2) : Rational(1);
      phis.emplace_back("#" + std::to_string(i),
                        random_group_function(rng, p, M, m, centre, i % 3 == 0 ? 0 : 1, i % 2, 0.6));
    }
    for (std::size_t i = 0; i < cfg.functions.size(); ++i)
      if (cfg.functions[i].prime() == p) phis.emplace_back("config#" + std::to_string(i), cfg.functions[i]);
    for (const auto& [label, phi] : phis) {
      const PlancherelReport r = plancherel_verify(phi);
      const std::string t = tag(p, "," + label);
      res.checks.push_back(scalar_check("plancherel", "plancherel" + t, "phi(1) = integral of Theta_gamma over gamma",
                                        r.lhs, r.rhs, false, cfg.tolerance));
      res.checks.push_back(flag_check("plancherel", "boundary-shell" + t + " v(gamma)=" + std::to_string(r.floor - 1),
                                      "Theta_gamma = 0 below the window", r.boundary_vanishes, true));
      res.checks.push_back(flag_check("plancherel", "tail-law" + t + " from v(gamma)=" + std::to_string(r.tail_start),
                                      "Theta_gamma affine in v(gamma) on the tail", r.tail_matches, true));
      res.checks.push_back(flag_check("dual", "dual-method plancherel" + t, "kernel-matrix trace = diagonal integral",
                                      r.dual_method_agree, true));
    }
  }
  return res;
}

SuiteResult plancherel_suite(const SuiteConfig& cfg, int functions) {
  SuiteResult res{"plancherel", {}};
  for (SuiteResult part : {character_suite(cfg, functions), vanishing_suite(cfg), plancherel_identity_suite(cfg, functions)})
    res.checks.insert(res.checks.end(), part.checks.begin(), part.checks.end());
  return res;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const Check& c) {
  return {{"name", c.name}, {"paper_ref", c.ref}, {"lhs", c.lhs}, {"rhs", c.rhs},
          {"delta", c.delta}, {"exact", c.exact}, {"pass", c.pass}};
}

nlohmann::json to_json(const SuiteConfig& cfg) {
  nlohmann::json a0 = nlohmann::json::array(), gammas = nlohmann::json::array();
  for (const Rational& r : cfg.a0) a0.push_back(to_json(r));
  for (const Rational& r : cfg.gammas) gammas.push_back(to_json(r));
  return {{"primes", cfg.primes},   {"a0", a0},           {"gammas", gammas},
          {"functions", cfg.functions.size()}, {"tolerance", cfg.tolerance},
          {"precision", cfg.precision}, {"seed", cfg.seed}, {"preset", cfg.preset}};
}

}  // namespace padic
