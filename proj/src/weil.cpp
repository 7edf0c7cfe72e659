#include "padic/weil.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "padic/character.hpp"

namespace padic {

namespace {

Rational p_pow(int p, int e) { return e >= 0 ? Rational(ipow(p, e)) : Rational(1, ipow(p, -e)); }

int val(const Rational& x, int p) { return x.is_zero() ? INT_MAX : valuation(x, p); }

int min_valuation(const RMatrix& a, int p) {
  int v = INT_MAX;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) v = std::min(v, val(a(i, j), p));
  return v;
}

// J(E) = ∫_𝒪 ς(u·p^{-E}·y²) dy, u a unit with residue u mod p.
CyclotomicValue unit_integral(int p, int64_t u, int E) {
  if (E <= 0) return CyclotomicValue(1);
  if (E >= 2) return unit_integral(p, u, E - 2).scaled(Rational(1, p));  // the unit shell vanishes
  PhaseAccumulator acc(p, 1);
  for (int64_t y = 0; y < p; ++y) acc.add_monomial(0, mulmod(u, y * y, p), Rational(1));
  return acc.result().scaled(Rational(1, p));
}

}  // namespace

QuadraticForm::QuadraticForm(int p, RMatrix gram) : p_(p), gram_(std::move(gram)) {
  if (p < 3 || p % 2 == 0) throw DomainError("quadratic forms need an odd prime");
  if (!gram_.is_symmetric()) throw DomainError("Gram matrix must be symmetric");
  if (gram_.rows() > 0 && gram_.det().is_zero()) throw DomainError("quadratic form is degenerate");
}

QuadraticForm QuadraticForm::diagonal(int p, const RVector& d) { return QuadraticForm(p, RMatrix::diagonal(d)); }

QuadraticForm QuadraticForm::hyperbolic(int p) {
  return QuadraticForm(p, RMatrix{{Rational(0), Rational(1, 2)}, {Rational(1, 2), Rational(0)}});
}

Rational QuadraticForm::operator()(const RVector& v) const { return dot(v, gram_ * v); }

QuadraticForm QuadraticForm::scaled(const Rational& a) const { return QuadraticForm(p_, gram_.scaled(a)); }

QuadraticForm QuadraticForm::direct_sum(const QuadraticForm& o) const {
  const std::size_t n = dim(), m = o.dim();
  RMatrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = gram_(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = o.gram_(i, j);
  return QuadraticForm(p_, g);
}

std::string QuadraticForm::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < dim(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < dim(); ++j) os << (j ? " " : "") << gram_(i, j).str();
  }
  os << "]";
  return os.str();
}

AlternatingForm::AlternatingForm(RMatrix a) : a_(std::move(a)) {
  if (!a_.is_antisymmetric()) throw DomainError("alternating form matrix must be antisymmetric");
}

AlternatingForm AlternatingForm::standard(std::size_t d) {
  RMatrix a(2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    a(i, d + i) = 1;
    a(d + i, i) = -1;
  }
  return AlternatingForm(a);
}

Rational AlternatingForm::operator()(const RVector& v, const RVector& w) const { return dot(v, a_ * w); }

AlternatingForm AlternatingForm::restricted(const RMatrix& basis) const {
  return AlternatingForm(basis.transpose() * a_ * basis);
}

JordanSplitting jordan_splitting(const QuadraticForm& Q) {
  const int p = Q.prime();
  const std::size_t n = Q.dim();
  RMatrix G = Q.gram(), T = RMatrix::identity(n);
  // column operations e_j ← e_j + c·e_i applied as G ← EᵀGE, T ← T·E
  auto add_col = [&](std::size_t j, std::size_t i, const Rational& c) {
    for (std::size_t r = 0; r < n; ++r) T(r, j) += c * T(r, i);
    for (std::size_t r = 0; r < n; ++r) G(r, j) += c * G(r, i);
    for (std::size_t r = 0; r < n; ++r) G(j, r) += c * G(i, r);
  };
  auto swap_idx = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < n; ++r) std::swap(T(r, a), T(r, b));
    for (std::size_t r = 0; r < n; ++r) std::swap(G(r, a), G(r, b));
    for (std::size_t r = 0; r < n; ++r) std::swap(G(a, r), G(b, r));
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t bi = k, bj = k;
    int best = INT_MAX;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        int v = val(G(i, j), p);
        if (v < best || (v == best && i == j && bi != bj)) best = v, bi = i, bj = j;
      }
    if (bi != bj) add_col(bi, bj, Rational(1));  // G_ii + 2G_ij + G_jj has the minimal valuation (p odd)
    swap_idx(k, bi);
    for (std::size_t j = k + 1; j < n; ++j)
      if (!G(k, j).is_zero()) add_col(j, k, -G(k, j) / G(k, k));
  }
  JordanSplitting out;
  for (std::size_t i = 0; i < n; ++i) out.diag.push_back(G(i, i));
  out.transform = T;
  return out;
}

CyclotomicValue gauss_sum(const QuadraticForm& Q, const Rational& a0, int N) {
  if (a0.is_zero()) throw DomainError("gauss_sum: a0 must be nonzero");
  const int p = Q.prime();
  CyclotomicValue out(1);
  for (const Rational& d : jordan_splitting(Q).diag) {
    // p^N·∫_𝒪 ς(c·p^{-2N}·y²) with c = ½a₀d = p^e·u
    Rational c = a0 * d / Rational(2);
    int e = valuation(c, p);
    int64_t u = residue_digits(c * p_pow(p, -e), p, 0, 1);
    out = out * unit_integral(p, u, 2 * N - e).scaled(p_pow(p, N));
  }
  return out;
}

WeilIndexResult weil_index(const QuadraticForm& Q, const Rational& a0, int max_level) {
  WeilIndexResult r;
  r.partial.push_back(gauss_sum(Q, a0, 0));
  for (int N = 0; N < max_level; ++N) {
    r.partial.push_back(gauss_sum(Q, a0, N + 1));
    if (r.partial[N] == r.partial[N + 1]) {
      r.level = N;
      r.gauss = r.partial[N];
      r.c_Q_squared = (r.gauss * r.gauss.conj()).rational_value();
      r.c_Q = CyclotomicValue::sqrt_rational(Q.prime(), r.c_Q_squared);
      r.value = r.gauss * CyclotomicValue::sqrt_rational(Q.prime(), r.c_Q_squared.inverse());
      return r;
    }
  }
  throw NoStabilization("Gauss sums did not stabilize by level " + std::to_string(max_level), r.partial);
}

TwistedConvolutionReport twisted_convolution_check(const QuadraticForm& Q, const Rational& a0,
                                                   const SchwartzFunction& phi) {
  const int p = Q.prime();
  const int n = static_cast<int>(Q.dim());
  if (phi.prime() != p || phi.dim() != n) throw DomainError("test function does not live on the form's space");
  AdditiveCharacter chi(p);
  const RMatrix aG = Q.gram().scaled(a0);
  const int v = min_valuation(aG, p);
  auto twist = [&](const RVector& x) { return chi(a0 * Q(x) / Rational(2)); };
  // g = φ·ς(½a₀Q) on a window fine enough for the twist to be constant on cells
  const int M = phi.outer();
  const int mg = std::max({phi.inner(), M - v, (-v + 1) / 2});
  SchwartzFunction phir = phi.refined(M, std::max(mg, phi.inner()));
  SchwartzFunction g = SchwartzFunction::from_function(
      p, n, M, phir.inner(), [&](const RVector& x) { return phir.evaluate(x) * twist(x); }, phi.measure());
  SchwartzFunction gh = fourier(g);
  // h(x) = ς(½a₀Q(x))·ĝ(−a₀Gx) is supported where a₀Gx ∈ ϖ^{-M̂}𝒪ⁿ
  const RMatrix inv = aG.inverse();
  const int w = min_valuation(inv, p);
  const int Mh = std::max(0, gh.outer() - w);
  const int mh = std::max({gh.inner() - v, Mh - v, (-v + 1) / 2, -Mh});
  SchwartzFunction h = SchwartzFunction::from_function(
      p, n, Mh, mh,
      [&](const RVector& x) {
        RVector l = aG * x;
        for (auto& c : l) c = -c;
        return gh.evaluate(l) * twist(x);
      },
      phi.measure());
  TwistedConvolutionReport r;
  r.lhs = h.integral();
  r.phi_integral = phi.integral();
  r.rhs = weil_index(Q, a0).gauss * r.phi_integral;
  r.abs_error = std::abs(r.lhs.to_complex() - r.rhs.to_complex());
  r.exact = r.lhs == r.rhs;
  return r;
}

QuadraticForm cayley_form(int p, const AlternatingForm& B, const RMatrix& s, const RMatrix& ell2) {
  const std::size_t n = B.dim();
  if (s.rows() != n || s.cols() != n || ell2.rows() != n) throw DomainError("cayley_form: shape mismatch");
  RMatrix d = s.inverse() - RMatrix::identity(n);
  if (d.det().is_zero()) throw DomainError("cayley_form: s^-1 - 1 is singular");
  RMatrix A = B.matrix() * d.inverse();
  RMatrix sym = (A + A.transpose()).scaled(Rational(1, 2));
  RMatrix g = ell2.transpose() * sym * ell2;
  if (g.rows() == 0 || g.det().is_zero()) throw DomainError("cayley_form: form is degenerate on the lagrangian");
  return QuadraticForm(p, g);
}

Rational pfaffian(const AlternatingForm& B) {
  const std::size_t n = B.dim();
  if (n % 2) throw DomainError("pfaffian: odd dimension");
  if (n == 0) return Rational(1);
  // expansion along the first row
  const RMatrix& a = B.matrix();
  Rational out(0);
  for (std::size_t j = 1; j < n; ++j) {
    if (a(0, j).is_zero()) continue;
    std::vector<std::size_t> keep;
    for (std::size_t k = 1; k < n; ++k)
      if (k != j) keep.push_back(k);
    RMatrix minor(n - 2, n - 2);
    for (std::size_t r = 0; r < keep.size(); ++r)
      for (std::size_t c = 0; c < keep.size(); ++c) minor(r, c) = a(keep[r], keep[c]);
    Rational term = a(0, j) * pfaffian(AlternatingForm(minor));
    out = (j % 2 == 1) ? out + term : out - term;
  }
  return out;
}

int64_t non_square_unit(int p) {
  for (int64_t u = 2; u < p; ++u) {
    bool square = false;
    for (int64_t y = 1; y < p && !square; ++y) square = (y * y) % p == u;
    if (!square) return u;
  }
  throw DomainError("no non-square unit");
}

}  // namespace padic
