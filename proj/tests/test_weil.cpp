#include <cmath>
#include <random>

#include "doctest.h"
#include "printers.hpp"
#include "padic/character.hpp"
#include "padic/generators.hpp"
#include "padic/weil.hpp"

using namespace padic;

namespace {

Rational pw(int p, int e) { return e >= 0 ? Rational(ipow(p, e)) : Rational(1, ipow(p, -e)); }

// Σ over ϖ^{-N}𝒪ⁿ / ϖ^{F}𝒪ⁿ of ς(½a₀Q(w))·p^{-Fn}, F chosen so the phase is
// constant on cells; plain cyclotomic additions.
CyclotomicValue brute_gauss(const QuadraticForm& Q, const Rational& a0, int N) {
  const int p = Q.prime();
  const int n = static_cast<int>(Q.dim());
  int v = 1000;
  for (std::size_t i = 0; i < Q.dim(); ++i)
    for (std::size_t j = 0; j < Q.dim(); ++j)
      if (!Q.gram()(i, j).is_zero()) v = std::min(v, valuation(a0 * Q.gram()(i, j), p));
  const int F = std::max({N - v, (1 - v) / 2 + 1, -N});
  const int64_t side = ipow(p, N + F);
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= side;
  AdditiveCharacter chi(p);
  CyclotomicValue s;
  for (std::size_t idx = 0; idx < total; ++idx) {
    RVector w(n);
    std::size_t r = idx;
    for (int i = 0; i < n; ++i) {
      w[i] = Rational(static_cast<int64_t>(r % side)) * pw(p, -N);
      r /= side;
    }
    s += chi(a0 * Q(w) / Rational(2));
  }
  return s.scaled(pw(p, -F * n));
}

QuadraticForm random_diagonal(Rng& rng, int p, int n) {
  std::uniform_int_distribution<int> unit(1, p - 1), v(-1, 2);
  RVector d;
  for (int i = 0; i < n; ++i) d.push_back(Rational(unit(rng)) * pw(p, v(rng)));
  return QuadraticForm::diagonal(p, d);
}

}  // namespace

TEST_CASE("gauss sums against direct summation") {
  const QuadraticForm x2 = QuadraticForm::diagonal(5, {Rational(1)});
  CHECK(gauss_sum(x2, Rational(1), 0) == CyclotomicValue(1));
  Rng rng(1);
  for (int p : {3, 5, 7}) {
    for (int N = 0; N <= 2; ++N) {
      CHECK(gauss_sum(QuadraticForm::diagonal(p, {Rational(1)}), Rational(1), N) ==
            brute_gauss(QuadraticForm::diagonal(p, {Rational(1)}), Rational(1), N));
      auto Q = random_diagonal(rng, p, 1);
      for (Rational a0 : {Rational(1), Rational(p), Rational(non_square_unit(p)), Rational(1, p)})
        CHECK(gauss_sum(Q, a0, N) == brute_gauss(Q, a0, N));
    }
    // non-diagonal Gram: the splitting must not change the integral
    QuadraticForm Q(p, RMatrix{{Rational(1), Rational(p)}, {Rational(p), Rational(2)}});
    QuadraticForm H(p, RMatrix{{Rational(p), Rational(1)}, {Rational(1), Rational(0)}});
    for (int N = 0; N <= 1; ++N) {
      CHECK(gauss_sum(Q, Rational(1), N) == brute_gauss(Q, Rational(1), N));
      CHECK(gauss_sum(H, Rational(non_square_unit(p)), N) == brute_gauss(H, Rational(non_square_unit(p)), N));
    }
  }
  // p = 5, N = 1: the classical quadratic Gauss sum over ϖ^{-1}𝒪/ϖ𝒪 is
  // (1/5)·Σ_y ζ_5^{3y²}... times p; |value| = 1 since 5 ≡ 1 mod 4 is a unit case
  CHECK(std::abs(gauss_sum(x2, Rational(1), 1).abs() - 1.0) < 1e-12);
}

TEST_CASE("jordan splitting is an integral congruence") {
  for (int p : {3, 5}) {
    QuadraticForm Q(p, RMatrix{{Rational(p), Rational(1), Rational(0)},
                               {Rational(1), Rational(0), Rational(p)},
                               {Rational(0), Rational(p), Rational(1, p)}});
    auto J = jordan_splitting(Q);
    CHECK(is_p_integral(J.transform, p));
    CHECK(valuation(J.transform.det(), p) == 0);
    CHECK(J.transform.transpose() * Q.gram() * J.transform == RMatrix::diagonal(J.diag));
  }
}

TEST_CASE("weil index examples") {
  Rng rng(2);
  for (int p : {3, 5, 7}) {
    for (Rational a0 : {Rational(1), Rational(p), Rational(non_square_unit(p))}) {
      auto Q = random_diagonal(rng, p, 2);
      CHECK(weil_index(Q.direct_sum(Q.negated()), a0).value == CyclotomicValue(1));
      CHECK(weil_index(QuadraticForm::hyperbolic(p), a0).value == CyclotomicValue(1));
      auto r = weil_index(QuadraticForm::diagonal(p, {Rational(1)}), a0);
      CHECK(std::abs(r.value.abs() - 1.0) < 1e-12);
      CHECK(r.value * r.value.conj() == CyclotomicValue(1));
      // c_Q = |det(a₀G)|^{-1/2}
      Rational d = abs_p(a0 * a0 * Q.det(), p);
      CHECK(weil_index(Q, a0).c_Q_squared == d.inverse());
      // G_N is constant from the stabilization level on
      auto w = weil_index(Q, a0);
      CHECK(gauss_sum(Q, a0, w.level + 3) == w.gauss);
    }
  }
  // unit coefficient: ς(½a₀Q) is trivial on 𝒪, γ = 1
  CHECK(weil_index(QuadraticForm::diagonal(5, {Rational(2)}), Rational(1)).value == CyclotomicValue(1));
  // ½·6 = 3 at p = 3: the Gauss sum 1 + 2ζ_3 = i√3 gives γ = i
  CHECK(weil_index(QuadraticForm::diagonal(3, {Rational(6)}), Rational(1)).value == CyclotomicValue::imag_unit());
}

TEST_CASE("weil index is multiplicative on diagonal forms") {
  Rng rng(3);
  for (int p : {3, 5, 7})
    for (int trial = 0; trial < 6; ++trial) {
      std::uniform_int_distribution<int> dim(1, 2);
      auto Q1 = random_diagonal(rng, p, dim(rng)), Q2 = random_diagonal(rng, p, dim(rng));
      Rational a0 = trial % 2 ? Rational(p) : Rational(non_square_unit(p));
      CHECK(weil_index(Q1.direct_sum(Q2), a0).value == weil_index(Q1, a0).value * weil_index(Q2, a0).value);
    }
}

TEST_CASE("stabilization failure is reported") {
  auto Q = QuadraticForm::diagonal(3, {Rational(ipow(3, 13))});
  CHECK_THROWS_AS(weil_index(Q, Rational(1), 2), NoStabilization);
  try {
    weil_index(Q, Rational(1), 2);
  } catch (const NoStabilization& e) {
    CHECK(e.partial_values.size() == 3);
  }
}

TEST_CASE("twisted convolution identity") {
  Rng rng(4);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 3; ++trial) {
      auto Q = random_diagonal(rng, p, trial == 2 ? 2 : 1);
      Rational a0 = trial == 1 ? Rational(p) : Rational(1);
      auto phi = random_schwartz(rng, p, static_cast<int>(Q.dim()), 1, 0);
      auto r = twisted_convolution_check(Q, a0, phi);
      CHECK(r.exact);
      CHECK(r.abs_error < 1e-9);
    }
    QuadraticForm Q(p, RMatrix{{Rational(1), Rational(1)}, {Rational(1), Rational(p)}});
    auto phi = random_schwartz(rng, p, 2, 1, 1);
    CHECK(twisted_convolution_check(Q, Rational(1), phi).exact);
  }
}

TEST_CASE("cayley form on the plane") {
  const int p = 5;
  auto B = AlternatingForm::standard(1);
  for (int64_t a : {2, 3, 4}) {
    RMatrix s = RMatrix::diagonal({Rational(a), Rational(1, a)});
    for (int64_t lam : {1, 2, 5}) {
      RMatrix ell(2, 1);
      ell(0, 0) = 1, ell(1, 0) = lam;
      auto Q = cayley_form(p, B, s, ell);
      CHECK(Q.gram()(0, 0) == Rational(lam) * Rational(1 + a) / Rational(a - 1));
    }
    RMatrix f(2, 1);
    f(1, 0) = 1;
    CHECK_THROWS_AS(cayley_form(p, B, s, f), DomainError);  // s-stable line, B vanishes
  }
  RMatrix line(2, 1);
  line(0, 0) = 1, line(1, 0) = 1;
  CHECK_THROWS_AS(cayley_form(p, B, RMatrix::identity(2).scaled(Rational(-1)), line), DomainError);
  CHECK_THROWS_AS(cayley_form(p, B, RMatrix::identity(2), line), DomainError);
}

TEST_CASE("pfaffian") {
  CHECK(pfaffian(AlternatingForm::standard(1)) == Rational(1));
  Rng rng(5);
  std::uniform_int_distribution<int> d(-3, 3);
  for (std::size_t n : {2u, 4u, 6u}) {
    RMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        a(i, j) = d(rng);
        a(j, i) = -a(i, j);
      }
    AlternatingForm B(a);
    Rational pf = pfaffian(B);
    CHECK(pf * pf == a.det());
    const Rational c(3, 2);
    Rational scaled = pfaffian(AlternatingForm(a.scaled(c)));
    Rational cd(1);
    for (std::size_t k = 0; k < n / 2; ++k) cd *= c;
    CHECK(scaled == cd * pf);
  }
  RMatrix sing(4, 4);
  sing(0, 1) = 1, sing(1, 0) = -1;
  CHECK(pfaffian(AlternatingForm(sing)) == Rational(0));
  CHECK_THROWS_AS(pfaffian(AlternatingForm(RMatrix(3, 3))), DomainError);
}
