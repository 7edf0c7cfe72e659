#include <random>
#include <set>

#include "doctest.h"
#include "printers.hpp"
#include "padic/errors.hpp"
#include "padic/generators.hpp"
#include "padic/orbits.hpp"

using namespace padic;

namespace {

Rational pw(int p, int e) { return e >= 0 ? Rational(ipow(p, e)) : Rational(1, ipow(p, -e)); }

GammaGroupElement random_group_element(Rng& rng) {
  const int64_t units[] = {1, -1, 2, -2, 3, 5, 7};
  std::uniform_int_distribution<int> u(0, 6), n(-4, 4), d(1, 3);
  return {Rational(units[u(rng)], units[u(rng)] < 0 ? 1 : d(rng)), Rational(n(rng), d(rng)),
          Rational(n(rng), d(rng))};
}

RVector random_form(Rng& rng) {
  std::uniform_int_distribution<int> n(-3, 3), d(1, 4);
  return {Rational(n(rng), d(rng)), Rational(n(rng), d(rng)), Rational(n(rng), d(rng))};
}

RVector basis_vector(std::size_t i) {
  RVector e(3, Rational(0));
  e[i] = 1;
  return e;
}

std::vector<RVector> small_forms() {
  std::vector<RVector> out;
  const int vals[] = {-1, 0, 1, 2};
  for (int a : vals)
    for (int b : vals)
      for (int c : vals) out.push_back({Rational(a), Rational(b), Rational(c)});
  return out;
}

}  // namespace

TEST_CASE("structure constants are validated") {
  const LieAlgebra g = LieAlgebra::gamma_example();
  CHECK(g.dim() == 3);
  CHECK(g.satisfies_jacobi());
  CHECK(g.is_solvable());
  CHECK(g.bracket(basis_vector(0), basis_vector(1)) == basis_vector(1));
  CHECK(g.bracket(basis_vector(0), basis_vector(2)) == RVector{0, 0, -1});
  CHECK(g.bracket(basis_vector(1), basis_vector(2)) == RVector{0, 0, 0});
  CHECK(LieAlgebra::heisenberg3().is_solvable());

  // [E1,E2] = E3, [E2,E3] = E1, [E1,E3] = E1 breaks Jacobi
  std::vector<std::vector<RVector>> bad(3, std::vector<RVector>(3));
  bad[0][1] = {0, 0, 1};
  bad[1][2] = {1, 0, 0};
  bad[0][2] = {1, 0, 0};
  CHECK_THROWS_AS(LieAlgebra({"E1", "E2", "E3"}, bad), DomainError);

  // sl2 is not solvable
  std::vector<std::vector<RVector>> sl2(3, std::vector<RVector>(3));
  sl2[0][1] = {0, 2, 0};   // [H, E] = 2E
  sl2[0][2] = {0, 0, -2};  // [H, F] = −2F
  sl2[1][2] = {1, 0, 0};   // [E, F] = H
  const LieAlgebra s({"H", "E", "F"}, sl2);
  CHECK_FALSE(s.is_solvable());
}

TEST_CASE("stabilizers and regularity on the example algebra") {
  const LieAlgebra L = LieAlgebra::gamma_example();
  // f_{α,β,γ} kills [X, ·] iff β x₂ = γ x₃ = 0 and x₁(β, −γ) = 0
  for (const RVector& f : small_forms()) {
    const RegularityReport r = regularity_report(L, f);
    const bool beta = !f[1].is_zero(), gamma = !f[2].is_zero();
    CAPTURE(f[0].str() + "," + f[1].str() + "," + f[2].str());
    CHECK(r.min_stabilizer_dim == 1);
    CHECK(r.stabilizer_dim == ((beta || gamma) ? 1u : 3u));
    CHECK(r.regular == (beta || gamma));
    // 𝔤(f) = k(γE2 + βE3) is unipotent, so 𝔧 = 0 and every regular form is strongly regular
    CHECK(r.strongly_regular == (beta || gamma));
    CHECK(r.pfaffian_criterion == r.strongly_regular);
    for (const RVector& X : r.stabilizer)
      for (std::size_t j = 0; j < 3; ++j) CHECK(dot(f, L.bracket(X, basis_vector(j))).is_zero());
    if (beta || gamma) {
      CHECK(r.max_cartan_dim == 0);
      CHECK(r.cartan_duflo.empty());
      CHECK(r.pfaffian == Rational(1));
      REQUIRE(r.stabilizer.size() == 1);
      const RVector& X = r.stabilizer[0];
      CHECK(X[0].is_zero());
      CHECK(X[1] * f[1] == X[2] * f[2]);
    }
  }
}

TEST_CASE("regularity on the Heisenberg algebra") {
  const LieAlgebra H = LieAlgebra::heisenberg3();
  for (const RVector& f : small_forms()) {
    const RegularityReport r = regularity_report(H, f);
    const bool central = !f[2].is_zero();
    CHECK(r.regular == central);
    CHECK(r.stabilizer_dim == (central ? 1u : 3u));
    // the centre is unipotent: no reductive part, so [𝔧, 𝔤] = 0
    if (central) CHECK(r.cartan_duflo.empty());
  }
}

TEST_CASE("group law and the adjoint and coadjoint actions") {
  Rng rng(11);
  const LieAlgebra L = LieAlgebra::gamma_example();
  for (int t = 0; t < 40; ++t) {
    const GammaGroupElement g = random_group_element(rng), h = random_group_element(rng);
    CHECK((g * h).matrix() == g.matrix() * h.matrix());
    CHECK((g * g.inverse()) == GammaGroupElement{});
    CHECK(adjoint_matrix(g * h) == adjoint_matrix(g) * adjoint_matrix(h));
    // Ad(g) is a Lie algebra automorphism
    const RVector X = random_form(rng), Y = random_form(rng);
    const RMatrix A = adjoint_matrix(g);
    auto apply = [](const RMatrix& M, const RVector& v) {
      RVector out(v.size(), Rational(0));
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += M(i, j) * v[j];
      return out;
    };
    CHECK(apply(A, L.bracket(X, Y)) == L.bracket(apply(A, X), apply(A, Y)));
    // Ad(g) as conjugation of matrices: g·X·g⁻¹ with X ↦ [[X1, 0, X2], [0, −X1, X3], [0, 0, 0]]
    auto mat = [](const RVector& v) {
      const Rational z(0);
      return RMatrix{{v[0], z, v[1]}, {z, -v[0], v[2]}, {z, z, z}};
    };
    CHECK(g.matrix() * mat(X) * g.inverse().matrix() == mat(apply(A, X)));

    const RVector f = random_form(rng);
    CHECK(coadjoint_action(g * h, f) == coadjoint_action(g, coadjoint_action(h, f)));
    CHECK(coadjoint_action(GammaGroupElement{}, f) == f);
    CHECK(apply(coadjoint_matrix(g), f) == coadjoint_action(g, f));
    // (g·f)(Ad(g)X) = f(X)
    CHECK(dot(coadjoint_action(g, f), apply(A, X)) == dot(f, X));
    // closed form of the inverse action
    const RVector inv = coadjoint_action(g.inverse(), f);
    CHECK(inv == RVector{f[0] - f[1] * g.x + f[2] * g.y, f[1] * g.a, f[2] / g.a});
    // βγ is invariant
    const RVector gf = coadjoint_action(g, f);
    CHECK(gf[1] * gf[2] == f[1] * f[2]);
  }
}

TEST_CASE("closed orbits and the strongly regular locus") {
  for (const RVector& f : small_forms()) {
    const bool beta = !f[1].is_zero(), gamma = !f[2].is_zero();
    CAPTURE(f[0].str() + "," + f[1].str() + "," + f[2].str());
    // G·f_{α,β,0} contains f_{α',β',0} with α' arbitrary, accumulating at f_{α,0,0}
    CHECK(orbit_closed(f) == ((beta && gamma) || (!beta && !gamma)));
    CHECK(in_omega_G(f) == (beta && gamma));
  }
}

TEST_CASE("unit coset representatives") {
  for (int p : {3, 5}) {
    for (int k : {1, 2}) {
      const auto reps = unit_coset_representatives(p, -1, k);
      CHECK(reps.size() == static_cast<std::size_t>((p - 1) * ipow(p, k - 1)));
      std::set<int64_t> classes;
      for (const Rational& r : reps) {
        CHECK(valuation(r, p) == -1);
        const Rational u = r * Rational(p);
        classes.insert(mod_floor(u.num() * invmod(mod_floor(u.den(), ipow(p, k)), ipow(p, k)), ipow(p, k)));
      }
      CHECK(classes.size() == reps.size());
    }
  }
}

TEST_CASE("hyperbola integral: tail law and invariance") {
  Rng rng(5);
  for (int p : {3, 5}) {
    for (int t = 0; t < 4; ++t) {
      const int M = t % 2, m = 1;
      const SchwartzFunction F = random_schwartz(rng, p, 2, M, m, 1, 0.5);
      const HyperbolaTail tail = hyperbola_tail(F);
      const int k = hyperbola_gamma_level(F);
      for (int g = tail.floor - 2; g <= tail.start + 3; ++g) {
        for (const Rational& gam : unit_coset_representatives(p, g, k)) {
          const CyclotomicValue h = hyperbola_integral(F, gam);
          if (g < tail.floor) CHECK(h.is_zero());
          if (g >= tail.start) CHECK(h == tail.constant + tail.slope.scaled(Rational(g)));
          // constant on γ(1 + ϖ^k𝒪)
          CHECK(hyperbola_integral(F, gam * (Rational(1) + pw(p, k))) == h);
          // a ↦ −a and the swap (ξ, η) ↦ (η, ξ) preserve the hyperbola
          const SchwartzFunction swapped = F.pullback(RMatrix{{0, 1}, {1, 0}});
          CHECK(hyperbola_integral(swapped, gam) == h);
        }
      }
      // the tail sum satisfies its own recursion
      const int G = tail.start;
      const CyclotomicValue shell =
          (tail.constant + tail.slope.scaled(Rational(G))).scaled(Rational(p - 1, p) * pw(p, -G));
      CHECK(tail_integral(p, G, tail.constant, tail.slope) ==
            shell + tail_integral(p, G + 1, tail.constant, tail.slope));
    }
  }
}

TEST_CASE("disintegration of the measure on u* along the hyperbolas") {
  Rng rng(17);
  for (int p : {3, 5, 7}) {
    for (int t = 0; t < 3; ++t) {
      const int M = t == 2 ? 1 : 0, m = t == 0 ? 0 : 1;
      const SchwartzFunction F = random_schwartz(rng, p, 2, M, m, 1, 0.6);
      const DisintegrationReport r = measure_disintegration_check(F);
      CAPTURE(p);
      CHECK(r.boundary_vanishes);
      CHECK(r.tail_matches);
      CHECK(r.exact);
      CHECK(r.lhs == r.rhs);
    }
  }
  // ∫ 1_{𝒪²} = 1
  const DisintegrationReport one = measure_disintegration_check(SchwartzFunction::indicator(3, 2, 0));
  CHECK(one.lhs == CyclotomicValue(1));
  CHECK(one.exact);
}

TEST_CASE("orbital integrals over O_(0,1,gamma)") {
  Rng rng(23);
  const int p = 3;
  const SchwartzFunction F = random_schwartz(rng, p, 3, 1, 1, 1, 0.5);
  for (const Rational& gamma : {Rational(1), Rational(2), Rational(3), Rational(1, 3)}) {
    const CyclotomicValue I = orbital_integral(OrbitChart::gamma_orbit(gamma), F);
    // G-invariance: translate F by integral elements of G
    for (const GammaGroupElement& g : {GammaGroupElement{Rational(2), Rational(1), Rational(0)},
                                       GammaGroupElement{Rational(1), Rational(0), Rational(2)},
                                       GammaGroupElement{Rational(-1), Rational(1), Rational(1)}}) {
      const SchwartzFunction moved = F.pullback(coadjoint_matrix(g));
      CHECK(orbital_integral(OrbitChart::gamma_orbit(gamma), moved) == I);
    }
    // the unipotent projection recovers the hyperbola integral of ∫F dα
    CHECK(OrbitChart::gamma_orbit(gamma).point_at(Rational(2), Rational(3)) == RVector{2, 3, gamma / Rational(3)});
  }
  CHECK(orbital_integral(OrbitChart::point(Rational(1)), F) == F.evaluate({1, 0, 0}));
}

TEST_CASE("fibered orbit integral on five instances") {
  Rng rng(29);
  struct Inst {
    int p, M, m;
    Rational gamma;
  };
  const Inst insts[] = {{3, 0, 1, Rational(1)}, {3, 1, 1, Rational(3)}, {5, 0, 1, Rational(2)},
                        {3, 1, 0, Rational(1, 3)}, {7, 0, 1, Rational(3)}};
  for (const Inst& in : insts) {
    const SchwartzFunction F = random_schwartz(rng, in.p, 3, in.M, in.m, 1, 0.5);
    const FiberedReport r = fibered_orbit_integral_check(F, in.gamma);
    CAPTURE(in.p);
    CHECK(r.exact);
  }
}
