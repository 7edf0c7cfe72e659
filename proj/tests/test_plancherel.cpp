#include <random>

#include "doctest.h"
#include "printers.hpp"
#include "padic/errors.hpp"
#include "padic/generators.hpp"
#include "padic/plancherel.hpp"

using namespace padic;

namespace {

Rational pw(int p, int e) { return e >= 0 ? Rational(ipow(p, e)) : Rational(1, ipow(p, -e)); }

// 1_K / vol(K) for K = (1 + ϖ^k𝒪) × ϖ^j𝒪 × ϖ^j𝒪, an idempotent of the Hecke algebra.
SchwartzFunction projection(int p, int k, int j) {
  const int M = std::max(0, -j), m = std::max(k, j);
  const Rational height = pw(p, k + 2 * j);
  return SchwartzFunction::from_function(p, 3, M, m, [&](const RVector& v) {
    const Rational d = v[0] - Rational(1);
    const bool in_a = d.is_zero() || valuation(d, p) >= k;
    const bool in_x = v[1].is_zero() || valuation(v[1], p) >= j;
    const bool in_y = v[2].is_zero() || valuation(v[2], p) >= j;
    return (in_a && in_x && in_y) ? CyclotomicValue(height) : CyclotomicValue();
  });
}

// dim of the K-fixed vectors of π_γ: ψ of level k supported on −j − v(γ) ≤ v(b) ≤ j
int64_t fixed_dimension(int p, int k, int j, int g) {
  const int64_t shells = std::max(0, 2 * j + g + 1);
  return shells * (p - 1) * ipow(p, k - 1);
}

UnitGroupFunction random_unit_function(Rng& rng, int p, int level) {
  UnitGroupFunction psi(p, level);
  std::uniform_int_distribution<int> v(-1, 1), c(-2, 2);
  for (int t = 0; t < 4; ++t) {
    const auto reps = unit_coset_representatives(p, v(rng), level);
    std::uniform_int_distribution<std::size_t> pick(0, reps.size() - 1);
    psi.set(reps[pick(rng)], CyclotomicValue(Rational(c(rng))));
  }
  return psi;
}

}  // namespace

TEST_CASE("pi_gamma is a representation") {
  Rng rng(3);
  const int p = 3;
  const GammaGroupElement elems[] = {{Rational(2), Rational(1), Rational(0)},
                                     {Rational(3), Rational(1, 3), Rational(2)},
                                     {Rational(1, 3), Rational(0), Rational(1, 9)},
                                     {Rational(-1), Rational(5), Rational(-1, 3)}};
  for (const Rational& gamma : {Rational(1), Rational(3), Rational(1, 3)}) {
    for (const auto& g : elems)
      for (const auto& h : elems) {
        const UnitGroupFunction psi = random_unit_function(rng, p, 1);
        CHECK(pi_gamma_apply(gamma, g, pi_gamma_apply(gamma, h, psi)) == pi_gamma_apply(gamma, g * h, psi));
      }
    const UnitGroupFunction psi = random_unit_function(rng, p, 2);
    CHECK(pi_gamma_apply(gamma, GammaGroupElement{}, psi) == psi);
  }
}

TEST_CASE("require_group_function") {
  CHECK_THROWS_AS(require_group_function(SchwartzFunction(3, 2, 0, 1)), DomainError);
  SchwartzFunction bad(3, 3, 0, 1);
  bad.set(0, CyclotomicValue(1));  // the cell of a = 0
  CHECK_THROWS_AS(require_group_function(bad), DomainError);
  CHECK_NOTHROW(require_group_function(projection(3, 1, 0)));
}

TEST_CASE("trace of a compact-subgroup projection counts fixed vectors") {
  for (int p : {3, 5}) {
    for (auto [k, j] : {std::pair{1, 0}, {1, 1}, {2, 0}, {1, -1}}) {
      if (p == 5 && k == 2) continue;
      const SchwartzFunction phi = projection(p, k, j);
      KernelEvaluator K(phi);
      const SchwartzFunction F = unipotent_slice_transform(phi);
      for (int g = -2 * j - 2; g <= 2; ++g) {
        for (const Rational& u : {Rational(1), Rational(2)}) {
          const Rational gamma = u * pw(p, g);
          CAPTURE(p);
          CAPTURE(k);
          CAPTURE(j);
          CAPTURE(g);
          const CyclotomicValue expected(Rational(fixed_dimension(p, k, j, g)));
          CHECK(theta_kernel_trace(K, gamma) == expected);
          CHECK(theta_closed_form(F, gamma) == expected);
        }
      }
    }
  }
}

TEST_CASE("projection kernel matrix is idempotent on the window") {
  const int p = 3;
  const SchwartzFunction phi = projection(p, 1, 0);
  KernelEvaluator K(phi);
  for (const Rational& gamma : {Rational(1), Rational(3)}) {
    ThetaWindow w = theta_window(gamma, phi);
    const auto reps = window_representatives(p, w);
    CHECK(reps.size() == w.cosets);
    const LatticeOperator A = kernel_matrix(K, gamma, reps, w.level);
    CHECK(A * A == A);
    CHECK(A.adjoint() == A);
    CHECK(A.trace() == theta_kernel_trace(K, gamma));
  }
}

TEST_CASE("kernel entries agree with pi_gamma applied to indicators") {
  // (π_γ(φ)1_C)(b) = Σ_cells φ(g)·(π_γ(g)1_C)(b)·vol
  Rng rng(41);
  const int p = 3;
  const SchwartzFunction phi = random_group_function(rng, p, 0, 1, Rational(1), 1, 0, 0.5);
  KernelEvaluator K(phi);
  const Rational gamma(3);
  const int k = 1;
  for (const Rational& c : {Rational(1), Rational(2), Rational(1, 3)}) {
    UnitGroupFunction ind(p, k);
    ind.set(c, CyclotomicValue(1));
    // ∫ over G by cells of φ, refined so that π_γ(g)1_C is constant on each cell
    const SchwartzFunction fine = phi.refined(phi.outer(), 3);
    UnitGroupFunction out(p, 3);
    for (std::size_t idx = 0; idx < fine.cells(); ++idx) {
      if (fine.at(idx).is_zero()) continue;
      const RVector x = fine.point(idx);
      const UnitGroupFunction img = pi_gamma_apply(gamma, {x[0], x[1], x[2]}, ind);
      for (const auto& [b, v] : img.refined(3).entries())
        out.set(b, out.evaluate(b) + fine.at(idx) * v.scaled(fine.cell_volume()));
    }
    for (const Rational& b : {Rational(1), Rational(2), Rational(4), Rational(1, 3), Rational(3)}) {
      CAPTURE(b.str());
      CHECK(K.entry(gamma, b, c, k) == out.evaluate(b));
    }
  }
}

TEST_CASE("kernel trace equals the closed-form diagonal") {
  Rng rng(7);
  for (int p : {3, 5}) {
    for (int t = 0; t < 4; ++t) {
      const int M = t % 2;
      const Rational centre = t < 2 ? Rational(1) : Rational(2);
      const SchwartzFunction phi = random_group_function(rng, p, M, 1, centre, t < 2 ? 0 : 1, t % 2, 0.5);
      const SchwartzFunction F = unipotent_slice_transform(phi);
      KernelEvaluator K(phi);
      for (int g = -2 * M - 1; g <= 2; ++g) {
        const Rational gamma = Rational(2) * pw(p, g);
        const CharacterReport r = theta_gamma(gamma, phi);
        CAPTURE(p);
        CAPTURE(g);
        CHECK(r.agree);
        CHECK(r.kernel_trace == theta_closed_form(F, gamma));
        // Θ_γ depends on γ only through γ(1 + ϖ^{m+M}𝒪)
        const Rational moved = gamma * (Rational(1) + pw(p, hyperbola_gamma_level(F)));
        CHECK(theta_kernel_trace(K, moved) == r.kernel_trace);
      }
    }
  }
}

TEST_CASE("characters are conjugation invariant") {
  Rng rng(13);
  const int p = 3;
  const SchwartzFunction phi = random_group_function(rng, p, 0, 1, Rational(1), 1, 0, 0.6);
  // φ(h⁻¹ · h) for h = (a, x, y) with a a unit and x, y integral
  for (const GammaGroupElement& h : {GammaGroupElement{Rational(2), Rational(0), Rational(0)},
                                     GammaGroupElement{Rational(1), Rational(1), Rational(2)}}) {
    const GammaGroupElement hi = h.inverse();
    const SchwartzFunction conj = SchwartzFunction::from_function(p, 3, 0, 1, [&](const RVector& v) {
      const GammaGroupElement g{v[0], v[1], v[2]};
      if (g.a.is_zero()) return CyclotomicValue();
      const GammaGroupElement c = hi * g * h;
      return phi.evaluate({c.a, c.x, c.y});
    });
    for (const Rational& gamma : {Rational(1), Rational(3), Rational(2, 3)})
      CHECK(theta_gamma(gamma, conj).kernel_trace == theta_gamma(gamma, phi).kernel_trace);
  }
}

TEST_CASE("exponential series residues") {
  for (int p : {3, 5, 7}) {
    const int N = 4;
    const int64_t P = ipow(p, N);
    const Rational xs[] = {Rational(p), Rational(2 * p), Rational(-p), Rational(p * p), Rational(p, 2)};
    for (const Rational& X : xs) {
      for (const Rational& Y : xs) {
        // e^{X+Y} = e^X e^Y
        CHECK(exp_series_residue(X + Y, p, N) ==
              mulmod(exp_series_residue(X, p, N), exp_series_residue(Y, p, N), P));
      }
      // X·h(X) = e^X − 1, checked one digit lower since v(X) ≥ 1
      const Rational lhs = X * Rational(exp_series_residue(X, p, N, true)) - Rational(exp_series_residue(X, p, N) - 1);
      CHECK((lhs.is_zero() || valuation(lhs, p) >= N));
      CHECK(exp_series_residue(X, p, N) % p == 1);
    }
    CHECK(exp_series_residue(Rational(0), p, N) == 1);
    CHECK_THROWS_AS(exp_series_residue(Rational(1), p, N), DomainError);
  }
}

TEST_CASE("the exponential chart preserves the integral") {
  Rng rng(19);
  for (int p : {3, 5}) {
    for (int t = 0; t < 3; ++t) {
      const SchwartzFunction phi = random_group_function(rng, p, t % 2, 1, Rational(1), 1, t % 2, 0.5);
      const SchwartzFunction pulled = exp_pullback(phi);
      CHECK(pulled.integral() == phi.integral());
      CHECK(pulled.evaluate({0, 0, 0}) == phi.evaluate({1, 0, 0}));
    }
  }
  CHECK_THROWS_AS(exp_pullback(projection(3, 0, 0).refined(0, 1)), DomainError);
}

TEST_CASE("character formula at the identity") {
  Rng rng(23);
  for (int p : {3, 5}) {
    for (int t = 0; t < 3; ++t) {
      const SchwartzFunction phi =
          random_group_function(rng, p, (t == 2 && p == 3) ? 1 : 0, 1, Rational(1), 1, t % 2, 0.5);
      std::vector<Rational> gammas;
      for (int g : {-1, 0, 2}) gammas.push_back(Rational(2) * pw(p, g));
      for (const CharacterFormulaReport& r : character_formula_check_s1(gammas, phi)) {
        CAPTURE(p);
        CAPTURE(r.gamma.str());
        CHECK(r.epsilon >= 1);
        CHECK(r.dual_method_agree);
        CHECK(r.exact);
      }
    }
  }
  const CharacterFormulaReport proj = character_formula_check_s1(Rational(1), projection(3, 1, 0));
  CHECK(proj.orbital == CyclotomicValue(Rational(2)));
  CHECK(proj.exact);
}

TEST_CASE("characters vanish near far split elements") {
  Rng rng(31);
  for (int p : {3, 5}) {
    for (const Rational& a_s : {Rational(2), Rational(-1)}) {
      const SchwartzFunction phi = random_group_function(rng, p, 1, 1, a_s, 1, 1, 0.5);
      for (int g : {-2, 0, 1}) {
        const VanishingReport r = character_vanishing_check(Rational(1) * pw(p, g), a_s, 1, phi);
        CHECK(r.tube_separated);
        CHECK(r.exact_zero);
      }
    }
  }
  // a tube that meets U is rejected as separated
  const SchwartzFunction near = random_group_function(rng, 3, 0, 1, Rational(1), 1, 0, 0.5);
  CHECK_FALSE(character_vanishing_check(Rational(1), Rational(4), 1, near).tube_separated);
  // support outside the tube is rejected
  CHECK_THROWS_AS(character_vanishing_check(Rational(1), Rational(2), 1, near), DomainError);
}

TEST_CASE("Plancherel formula") {
  Rng rng(37);
  for (int p : {3, 5}) {
    for (int t = 0; t < 3; ++t) {
      const SchwartzFunction phi = random_group_function(rng, p, t == 2 ? 1 : 0, 1, Rational(1), t == 0 ? 0 : 1,
                                                         t % 2, 0.6);
      const PlancherelReport r = plancherel_verify(phi);
      CAPTURE(p);
      CAPTURE(t);
      CHECK(r.dual_method_agree);
      CHECK(r.boundary_vanishes);
      CHECK(r.tail_matches);
      CHECK(r.lhs == r.rhs);
      CHECK(r.exact);
    }
    // the projection gives φ(1) = p^{k+2j}
    const PlancherelReport proj = plancherel_verify(projection(p, 1, 0));
    CHECK(proj.lhs == CyclotomicValue(Rational(p)));
    CHECK(proj.exact);
  }
}

TEST_CASE("Kirillov trace on the Heisenberg group") {
  Rng rng(43);
  for (int p : {3, 5}) {
    for (const Rational& a0 : {Rational(1), Rational(p)}) {
      LatticeModel L(p, 1, a0);
      const SchwartzFunction phi = random_schwartz(rng, p, 3, 0, 1);
      for (const Rational& t : {Rational(1), Rational(1, p)}) {
        const KirillovReport r = heisenberg_kirillov_check(L, phi, t);
        CHECK(r.exact);
        CHECK(r.central_ok);
      }
    }
  }
}
