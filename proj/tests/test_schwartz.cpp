#include <random>

#include "doctest.h"
#include "printers.hpp"
#include "padic/character.hpp"
#include "padic/errors.hpp"
#include "padic/generators.hpp"
#include "padic/io.hpp"
#include "padic/schwartz.hpp"

using namespace padic;

namespace {

Rational pw(int p, int e) { return e >= 0 ? Rational(ipow(p, e)) : Rational(1, ipow(p, -e)); }

// φ̂(l) straight from the definition: Σ_cells φ(x)·ς(⟨l,x⟩)·vol, accumulated
// with plain cyclotomic additions.
CyclotomicValue fourier_oracle(const SchwartzFunction& phi, const RVector& l) {
  AdditiveCharacter chi(phi.prime());
  CyclotomicValue s;
  for (std::size_t i = 0; i < phi.cells(); ++i) {
    if (phi.at(i).is_zero()) continue;
    RVector x = phi.point(i);
    s += phi.at(i) * chi(dot(l, x));
  }
  return s.scaled(phi.cell_volume());
}

// all grid points a·p^{-M} with digits in [0, p^{M+m}) — plus one more
// digit so points just outside the window are probed
std::vector<RVector> probe_points(int p, int n, int M, int m) {
  const int64_t side = ipow(p, M + m + 1);
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= side;
  std::vector<RVector> out;
  for (std::size_t idx = 0; idx < total; ++idx) {
    RVector x(n);
    std::size_t r = idx;
    for (int i = n - 1; i >= 0; --i) {
      x[i] = Rational(static_cast<int64_t>(r % side)) * pw(p, -(M + 1));
      r /= side;
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("evaluate, refine and canonical form") {
  Rng rng(11);
  for (int p : {3, 5}) {
    auto f = random_schwartz(rng, p, 2, 1, 1);
    auto g = f.refined(2, 2);
    auto c = f.canonical();
    CHECK(c.outer() <= f.outer());
    CHECK(c.inner() <= f.inner());
    for (const auto& x : probe_points(p, 2, 1, 1)) {
      CHECK(g.evaluate(x) == f.evaluate(x));
      CHECK(c.evaluate(x) == f.evaluate(x));
    }
    CHECK(f == g);
    CHECK(g.canonical().table() == c.table());
  }
  auto z = SchwartzFunction(3, 2, 2, 1).canonical();
  CHECK(z.outer() == 0);
  CHECK(z.inner() == 0);
  CHECK(z.cells() == 1);
  // 1_{ϖ^-2 𝒪} is a single cell
  auto big = SchwartzFunction::indicator(5, 1, -2).refined(3, 1).canonical();
  CHECK(big.outer() == 2);
  CHECK(big.inner() == -2);
  CHECK(big.evaluate({Rational(1, 25)}) == CyclotomicValue(1));
  CHECK(big.evaluate({Rational(1, 125)}).is_zero());
}

TEST_CASE("indicator transforms") {
  for (int p : {3, 5, 7}) {
    for (int n = 1; n <= 2; ++n) {
      auto one = SchwartzFunction::indicator(p, n, 0);
      CHECK(fourier(one) == one);
      for (int k : {-1, 1, 2}) {
        // 1_{ϖ^k 𝒪ⁿ} ↦ q^{-kn} 1_{ϖ^{-k} 𝒪ⁿ}
        auto lhs = fourier(SchwartzFunction::indicator(p, n, k));
        auto rhs = SchwartzFunction::indicator(p, n, -k).scaled(CyclotomicValue(pw(p, -k * n)));
        CHECK(lhs == rhs);
      }
    }
  }
  auto zero = SchwartzFunction(5, 2, 1, 1);
  CHECK(fourier(zero).is_zero());
  // n = 1, 1_{ϖ𝒪} → (1/q)·1_{ϖ^{-1}𝒪}, pointwise against the oracle
  for (int p : {3, 5, 7}) {
    auto f = SchwartzFunction::indicator(p, 1, 1);
    auto F = fourier(f);
    for (const auto& l : probe_points(p, 1, 1, 1)) {
      if (valuation(l[0].is_zero() ? Rational(p) : l[0], p) >= -1) {
        CHECK(fourier_oracle(f, l) == CyclotomicValue(Rational(1, p)));
        CHECK(F.evaluate(l) == CyclotomicValue(Rational(1, p)));
      }
    }
  }
}

TEST_CASE("fourier agrees with the direct finite sum") {
  Rng rng(2024);
  struct Case { int p, n, M, m; };
  for (Case c : {Case{3, 1, 2, 1}, Case{5, 1, 0, 2}, Case{7, 1, 1, 0}, Case{3, 2, 1, 0}, Case{3, 2, 0, 1},
                 Case{5, 2, 1, -1}, Case{3, 3, 1, 0}, Case{3, 1, 1, -1}}) {
    auto f = random_schwartz(rng, c.p, c.n, c.M, c.m, 1);
    auto F = fourier(f);
    CHECK(F.measure().scale == 0);
    // the finite sum is exact for l ∈ ϖ^{-m}; one level finer covers the
    // probe shell just outside the dual window
    const int m = std::max(c.m, 0);
    auto fine = f.refined(c.M, m + 1);
    for (const auto& l : probe_points(c.p, c.n, m, c.M)) CHECK(F.evaluate(l) == fourier_oracle(fine, l));
  }
}

TEST_CASE("modulated indicator: inversion both sides brute force") {
  for (int p : {3, 5}) {
    AdditiveCharacter chi(p);
    const Rational a(1, p * p);
    auto f = SchwartzFunction::from_function(p, 1, 0, 2, [&](const RVector& x) { return chi(a * x[0]); });
    auto rep = fourier_inverse_check(f);
    CHECK(rep.equal);
    CHECK(rep.value_at_zero == CyclotomicValue(1));
    // ∫ φ̂ by the oracle over the dual window ϖ^{-2}𝒪/𝒪
    CyclotomicValue s;
    for (int64_t e = 0; e < p * p; ++e) s += fourier_oracle(f, {Rational(e, p * p)});
    CHECK(s == rep.dual_integral);
  }
  auto one = fourier_inverse_check(SchwartzFunction::indicator(3, 1, 0));
  CHECK(one.equal);
  CHECK(one.value_at_zero == CyclotomicValue(1));
  CHECK(one.dual_integral == CyclotomicValue(1));
}

TEST_CASE("random suite: inversion, reflection, Parseval, convolution") {
  Rng rng(7);
  for (int p : {3, 5, 7}) {
    for (int n = 1; n <= 3; ++n) {
      for (int trial = 0; trial < 3; ++trial) {
        auto [M, m] = random_window(rng, p, n, 400);
        auto f = random_schwartz(rng, p, n, M, m).canonical();
        auto F = fourier(f);
        CHECK(fourier_inverse_check(f).equal);
        CHECK(fourier(F) == f.reflected());
        CHECK((f * f.conj()).integral() == (F * F.conj()).integral());
        if (f.cells() <= 125) {
          auto [M2, m2] = random_window(rng, p, n, 125);
          auto g = random_schwartz(rng, p, n, M2, m2);
          CHECK(fourier(convolve(f, g)) == F * fourier(g));
        }
      }
    }
  }
}

TEST_CASE("convolution examples") {
  for (int p : {3, 5}) {
    auto one = SchwartzFunction::indicator(p, 1, 0);
    CHECK(convolve(one, one) == one);
    CHECK(convolve(one, SchwartzFunction(p, 1, 0, 0)).is_zero());
    Rng rng(p);
    auto f = random_schwartz(rng, p, 1, 1, 1);
    for (int k : {1, 2}) {
      auto delta = SchwartzFunction::indicator(p, 1, k).scaled(CyclotomicValue(Rational(ipow(p, k))));
      CHECK(convolve(f, delta) == f);
    }
  }
}

TEST_CASE("measure tags") {
  auto f = SchwartzFunction::indicator(3, 1, 0, HaarMeasure{2});
  CHECK(f.integral() == CyclotomicValue(9));
  auto F = fourier(f);
  CHECK(F.measure().scale == -2);
  CHECK(F == SchwartzFunction::indicator(3, 1, 0, HaarMeasure{-2}).scaled(CyclotomicValue(9)));
  CHECK(fourier(F) == f);
  CHECK(fourier_inverse_check(f).equal);
  CHECK_THROWS_AS(f + SchwartzFunction::indicator(3, 1, 0), DomainError);
  CHECK_THROWS_AS(convolve(f, SchwartzFunction::indicator(3, 1, 0)), DomainError);
}

TEST_CASE("pullback intertwines with the transpose inverse") {
  Rng rng(99);
  RMatrix A(2, 2);
  A(0, 0) = 1, A(0, 1) = 2, A(1, 0) = 1, A(1, 1) = 3;  // det 1
  for (int p : {3, 5}) {
    auto f = random_schwartz(rng, p, 2, 1, 1);
    CHECK(fourier(f.pullback(A)) == fourier(f).pullback(A.inverse().transpose()));
    for (const auto& x : probe_points(p, 2, 1, 1)) CHECK(f.pullback(A).evaluate(x) == f.evaluate(A * x));
  }
  RMatrix bad = RMatrix::identity(2);
  bad(0, 0) = 3;
  CHECK_THROWS_AS(SchwartzFunction::indicator(3, 2, 0).pullback(bad), DomainError);
}

TEST_CASE("restriction and fiber integration") {
  Rng rng(5);
  for (int p : {3, 5}) {
    auto one2 = SchwartzFunction::indicator(p, 2, 0);
    RMatrix e1(2, 1);
    e1(0, 0) = 1;
    CHECK(restrict_fiber_integrate(one2, e1) == SchwartzFunction::indicator(p, 1, 0));
    // W = V: identity; W = 0: the total integral
    auto F = random_schwartz(rng, p, 2, 1, 0);
    CHECK(restrict_fiber_integrate(F, RMatrix::identity(2)) == F);
    auto tot = restrict_fiber_integrate(F, RMatrix(2, 0));
    CHECK(tot.dim() == 0);
    CHECK(tot.at(0) == F.integral());
    // the defining identity, on oblique subspaces
    for (int trial = 0; trial < 3; ++trial) {
      auto phi = random_schwartz(rng, p, 2, 1, 1);
      RMatrix w(2, 1);
      w(0, 0) = 1, w(1, 0) = trial + 1;
      CHECK(restrict_fiber_integrate(fourier(phi), w) == fourier(restrict_to_subspace(phi, w)));
    }
    auto phi3 = random_schwartz(rng, 3, 3, 1, 0);
    RMatrix w2(3, 2);
    w2(0, 0) = 1, w2(1, 0) = 1, w2(2, 1) = 1, w2(0, 1) = 2;
    CHECK(restrict_fiber_integrate(fourier(phi3), w2) == fourier(restrict_to_subspace(phi3, w2)));
  }
  RMatrix nonprim(2, 1);
  nonprim(0, 0) = 3;
  CHECK_THROWS_AS(restrict_fiber_integrate(SchwartzFunction::indicator(3, 2, 0), nonprim), DomainError);
}

TEST_CASE("nested chains compose") {
  // W1 ⊂ W2 ⊂ V: fiber-integrating in two steps equals one step
  Rng rng(17);
  const int p = 3;
  RMatrix w2(3, 2);
  w2(0, 0) = 1, w2(1, 0) = 2, w2(1, 1) = 1, w2(2, 1) = 1;
  RMatrix inner(2, 1);  // W1 in the coordinates of the W2 basis
  inner(0, 0) = 1, inner(1, 0) = 1;
  RMatrix w1 = w2 * inner;
  for (int trial = 0; trial < 3; ++trial) {
    auto F = random_schwartz(rng, p, 3, 1, 0);
    auto two_step = restrict_fiber_integrate(restrict_fiber_integrate(F, w2), inner);
    CHECK(two_step == restrict_fiber_integrate(F, w1));
    auto phi = random_schwartz(rng, p, 3, 0, 1);
    CHECK(restrict_to_subspace(restrict_to_subspace(phi, w2), inner) == restrict_to_subspace(phi, w1));
  }
}

TEST_CASE("json round trip") {
  Rng rng(3);
  for (int p : {3, 7}) {
    auto f = random_schwartz(rng, p, 2, 1, 0, 2);
    auto j = to_json(f);
    CHECK(schwartz_from_json(j) == f);
    CHECK(schwartz_from_json(nlohmann::json::parse(j.dump())) == f);
  }
  auto v = CyclotomicValue::monomial(5, 2, 3, 7, Rational(-3, 4)) + CyclotomicValue(Rational(1, 2));
  CHECK(cyclotomic_from_json(to_json(v)) == v);
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK_THROWS_AS(parse_rational("1/x"), DomainError);
  nlohmann::json bad = {{"p", 3}, {"n", 1}, {"M", 0}, {"m", 1}, {"entries", {{{"digits", {5}}, {"value", 1}}}}};
  CHECK_THROWS_AS(schwartz_from_json(bad), DomainError);
}
