#include "padic/orbits.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "padic/errors.hpp"
#include "padic/weil.hpp"

namespace padic {

namespace {

Rational p_pow(int p, int e) { return e >= 0 ? Rational(ipow(p, e)) : Rational(1, ipow(p, -e)); }

RVector zero_vector(std::size_t n) { return RVector(n, Rational(0)); }

RVector unit_vector(std::size_t n, std::size_t i) {
  RVector e = zero_vector(n);
  e[i] = 1;
  return e;
}

bool is_zero_vector(const RVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

// Greedy basis of span(vs).
std::vector<RVector> span_basis(const std::vector<RVector>& vs) {
  std::vector<RVector> out;
  for (const auto& v : vs) {
    if (is_zero_vector(v)) continue;
    auto trial = out;
    trial.push_back(v);
    if (RMatrix::from_columns(trial).rank() == trial.size()) out = std::move(trial);
  }
  return out;
}

// Coordinates of v in an independent family (v must lie in its span).
RVector coordinates_in(const std::vector<RVector>& basis, const RVector& v) {
  const std::size_t n = v.size();
  RMatrix A = RMatrix::from_columns(basis);
  // normal equations: (AᵀA)c = Aᵀv
  RMatrix AtA = A.transpose() * A;
  RVector c = AtA.inverse() * (A.transpose() * v);
  RVector back = A * c;
  for (std::size_t i = 0; i < n; ++i)
    if (!(back[i] == v[i])) throw DomainError("vector outside the subalgebra");
  return c;
}

// Deterministic sample of forms for generic dimensions.
std::vector<RVector> sample_forms(std::size_t n) {
  std::vector<RVector> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(unit_vector(n, i));
  uint64_t s = 0x9e3779b97f4a7c15ULL;
  for (int t = 0; t < 24; ++t) {
    RVector v(n);
    for (auto& x : v) {
      s = s * 6364136223846793005ULL + 1442695040888963407ULL;
      x = Rational(static_cast<int64_t>((s >> 33) % 19) - 9);
    }
    out.push_back(v);
  }
  return out;
}

std::size_t stabilizer_dim(const LieAlgebra& L, const RVector& g) { return L.dim() - L.beta(g).rank(); }

std::size_t min_stabilizer_dim(const LieAlgebra& L) {
  std::size_t best = L.dim();
  for (const auto& g : sample_forms(L.dim())) best = std::min(best, stabilizer_dim(L, g));
  return best;
}

// Structure constants of the subalgebra spanned by `basis`.
LieAlgebra subalgebra(const LieAlgebra& L, const std::vector<RVector>& basis) {
  const std::size_t r = basis.size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < r; ++i) names.push_back("h" + std::to_string(i + 1));
  std::vector<std::vector<RVector>> c(r, std::vector<RVector>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) c[i][j] = coordinates_in(basis, L.bracket(basis[i], basis[j]));
  return LieAlgebra(names, c);
}

// Semisimple part of the commutative stabilizer: complement of the radical of
// the trace form.
std::vector<RVector> reductive_part(const LieAlgebra& L, const std::vector<RVector>& stab) {
  const std::size_t r = stab.size();
  if (r == 0) return {};
  RMatrix T(r, r);
  std::vector<RMatrix> ads;
  for (const auto& X : stab) ads.push_back(L.ad(X));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      RMatrix P = ads[i] * ads[j];
      Rational tr;
      for (std::size_t k = 0; k < P.rows(); ++k) tr += P(k, k);
      T(i, j) = tr;
    }
  std::vector<RVector> rad;
  for (const auto& c : T.kernel()) {
    RVector X = zero_vector(L.dim());
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < L.dim(); ++k) X[k] += c[i] * stab[i][k];
    rad.push_back(X);
  }
  std::vector<RVector> out;
  auto acc = span_basis(rad);
  for (const auto& X : stab) {
    auto trial = acc;
    trial.push_back(X);
    if (RMatrix::from_columns(trial).rank() == trial.size()) {
      acc = trial;
      out.push_back(X);
    }
  }
  return out;
}

std::size_t cartan_dim(const LieAlgebra& L, const RVector& g, std::size_t min_dim) {
  auto stab = stabilizer_algebra(L, g);
  if (stab.size() != min_dim) return 0;
  return reductive_part(L, stab).size();
}

}  // namespace

// ---------------------------------------------------------------------------

LieAlgebra::LieAlgebra(std::vector<std::string> names, std::vector<std::vector<RVector>> brackets,
                       std::vector<std::size_t> unipotent)
    : names_(std::move(names)), c_(std::move(brackets)), unipotent_(std::move(unipotent)) {
  const std::size_t n = names_.size();
  if (c_.size() != n) throw DomainError("structure constants: wrong number of rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (c_[i].size() != n) throw DomainError("structure constants: wrong number of columns");
    for (std::size_t j = 0; j < n; ++j)
      if (c_[i][j].empty()) c_[i][j] = zero_vector(n);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (c_[i][j].size() != n) throw DomainError("structure constants: bracket of wrong length");
      if (j < i && is_zero_vector(c_[i][j]) && !is_zero_vector(c_[j][i]))
        for (std::size_t k = 0; k < n; ++k) c_[i][j][k] = -c_[j][i][k];
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!(c_[i][j][k] == -c_[j][i][k])) throw DomainError("structure constants are not antisymmetric");
  for (std::size_t u : unipotent_)
    if (u >= n) throw DomainError("unipotent radical index out of range");
  if (!satisfies_jacobi()) throw DomainError("structure constants violate the Jacobi identity");
}

LieAlgebra LieAlgebra::gamma_example() {
  std::vector<std::vector<RVector>> c(3, std::vector<RVector>(3));
  c[0][1] = {0, 1, 0};
  c[0][2] = {0, 0, -1};
  c[1][2] = {0, 0, 0};
  return LieAlgebra({"E1", "E2", "E3"}, c, {1, 2});
}

LieAlgebra LieAlgebra::heisenberg3() {
  std::vector<std::vector<RVector>> c(3, std::vector<RVector>(3));
  c[0][1] = {0, 0, 1};
  return LieAlgebra({"X", "Y", "Z"}, c, {0, 1, 2});
}

RVector LieAlgebra::bracket(const RVector& X, const RVector& Y) const {
  const std::size_t n = dim();
  RVector out = zero_vector(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (X[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (Y[j].is_zero()) continue;
      const Rational w = X[i] * Y[j];
      for (std::size_t k = 0; k < n; ++k)
        if (!c_[i][j][k].is_zero()) out[k] += w * c_[i][j][k];
    }
  }
  return out;
}

RMatrix LieAlgebra::ad(const RVector& X) const {
  std::vector<RVector> cols;
  for (std::size_t j = 0; j < dim(); ++j) cols.push_back(bracket(X, unit_vector(dim(), j)));
  return RMatrix::from_columns(cols);
}

RMatrix LieAlgebra::beta(const RVector& g) const {
  const std::size_t n = dim();
  RMatrix B(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) B(i, j) = dot(g, c_[i][j]);
  return B;
}

bool LieAlgebra::satisfies_jacobi() const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        RVector a = bracket(unit_vector(n, i), c_[j][k]);
        RVector b = bracket(unit_vector(n, j), c_[k][i]);
        RVector c = bracket(unit_vector(n, k), c_[i][j]);
        for (std::size_t t = 0; t < n; ++t)
          if (!(a[t] + b[t] + c[t]).is_zero()) return false;
      }
  return true;
}

bool LieAlgebra::is_solvable() const {
  std::vector<RVector> D;
  for (std::size_t i = 0; i < dim(); ++i) D.push_back(unit_vector(dim(), i));
  while (!D.empty()) {
    std::vector<RVector> next;
    for (const auto& X : D)
      for (const auto& Y : D) next.push_back(bracket(X, Y));
    next = span_basis(next);
    if (next.size() == D.size()) return false;
    D = std::move(next);
  }
  return true;
}

std::vector<RVector> stabilizer_algebra(const LieAlgebra& L, const RVector& g) {
  if (g.size() != L.dim()) throw DomainError("form has the wrong dimension");
  return L.beta(g).kernel();
}

RegularityReport regularity_report(const LieAlgebra& L, const RVector& g) {
  RegularityReport rep;
  rep.stabilizer = stabilizer_algebra(L, g);
  rep.stabilizer_dim = rep.stabilizer.size();
  rep.min_stabilizer_dim = min_stabilizer_dim(L);
  rep.regular = rep.stabilizer_dim == rep.min_stabilizer_dim;
  for (const auto& h : sample_forms(L.dim()))
    rep.max_cartan_dim = std::max(rep.max_cartan_dim, cartan_dim(L, h, rep.min_stabilizer_dim));
  if (!rep.regular) return rep;
  rep.cartan_duflo = reductive_part(L, rep.stabilizer);
  rep.strongly_regular = rep.cartan_duflo.size() == rep.max_cartan_dim;

  // π_B on [𝔧, 𝔤], and regularity of g in 𝔥* for 𝔥 the centralizer of 𝔧
  std::vector<RVector> image;
  for (const auto& X : rep.cartan_duflo) {
    RMatrix A = L.ad(X);
    for (std::size_t j = 0; j < L.dim(); ++j) image.push_back(A.column(j));
  }
  image = span_basis(image);
  if (image.empty()) {
    rep.pfaffian = 1;
  } else if (image.size() % 2 == 1) {
    rep.pfaffian = 0;
  } else {
    RMatrix Bb = RMatrix::from_columns(image);
    rep.pfaffian = pfaffian(AlternatingForm(Bb.transpose() * L.beta(g) * Bb));
  }
  std::vector<RVector> h;
  if (rep.cartan_duflo.empty()) {
    for (std::size_t i = 0; i < L.dim(); ++i) h.push_back(unit_vector(L.dim(), i));
  } else {
    std::vector<RVector> rows;
    RMatrix S(rep.cartan_duflo.size() * L.dim(), L.dim());
    for (std::size_t t = 0; t < rep.cartan_duflo.size(); ++t) {
      RMatrix A = L.ad(rep.cartan_duflo[t]);
      for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = 0; j < L.dim(); ++j) S(t * L.dim() + i, j) = A(i, j);
    }
    h = S.kernel();
  }
  LieAlgebra H = subalgebra(L, h);
  RVector gh;
  for (const auto& X : h) gh.push_back(dot(g, X));
  const bool regular_in_h = stabilizer_dim(H, gh) == min_stabilizer_dim(H);
  rep.pfaffian_criterion = regular_in_h && !rep.pfaffian.is_zero();
  return rep;
}

// ---------------------------------------------------------------------------

GammaGroupElement GammaGroupElement::operator*(const GammaGroupElement& o) const {
  return {a * o.a, x + a * o.x, y + o.y / a};
}

GammaGroupElement GammaGroupElement::inverse() const { return {a.inverse(), -x / a, -a * y}; }

RMatrix GammaGroupElement::matrix() const {
  return RMatrix{{a, Rational(0), x}, {Rational(0), a.inverse(), y}, {Rational(0), Rational(0), Rational(1)}};
}

RMatrix adjoint_matrix(const GammaGroupElement& g) {
  if (g.a.is_zero()) throw DomainError("a must be invertible");
  // g (X, Y, Z)_𝔤 g⁻¹ = (X, aY − xX, a⁻¹Z + yX)
  const RMatrix G = g.matrix(), Gi = g.inverse().matrix();
  std::vector<RVector> cols;
  for (int j = 0; j < 3; ++j) {
    RMatrix X(3, 3);
    if (j == 0) X(0, 0) = 1, X(1, 1) = -1;
    if (j == 1) X(0, 2) = 1;
    if (j == 2) X(1, 2) = 1;
    RMatrix Y = G * X * Gi;
    cols.push_back({Y(0, 0), Y(0, 2), Y(1, 2)});
  }
  return RMatrix::from_columns(cols);
}

RMatrix coadjoint_matrix(const GammaGroupElement& g) {
  // (g·f)_j = f(Ad(g⁻¹)E_j): the transpose of Ad(g⁻¹)
  return adjoint_matrix(g.inverse()).transpose();
}

RVector coadjoint_action(const GammaGroupElement& g, const RVector& f) {
  if (f.size() != 3) throw DomainError("forms on the example algebra have three coordinates");
  return coadjoint_matrix(g) * f;
}

bool orbit_closed(const RVector& f) {
  // (ϖ^{n},0,0)·f = f_{α, βϖ^{-n}, γϖ^{n}}; a convergent sequence of this
  // kind must converge inside the orbit.  Translations only move α, and only
  // when (β, γ) ≠ 0, so these are the only escaping directions.
  auto same_orbit = [](const RVector& u, const RVector& v) {
    const bool bu = !u[1].is_zero(), gu = !u[2].is_zero(), bv = !v[1].is_zero(), gv = !v[2].is_zero();
    if (bu != bv || gu != gv) return false;
    if (!bu && !gu) return u[0] == v[0];
    return u[1] * u[2] == v[1] * v[2];
  };
  if (f.size() != 3) throw DomainError("forms on the example algebra have three coordinates");
  for (int sign : {1, -1}) {
    RVector lim = f;
    bool bounded = true;
    if (!f[1].is_zero()) {
      if (sign > 0) bounded = false;
      else lim[1] = 0;
    }
    if (!f[2].is_zero()) {
      if (sign < 0) bounded = false;
      else lim[2] = 0;
    }
    if (bounded && !same_orbit(lim, f)) return false;
  }
  return true;
}

bool in_omega_G(const RVector& f) {
  const auto L = LieAlgebra::gamma_example();
  return regularity_report(L, f).strongly_regular && orbit_closed(f);
}

// ---------------------------------------------------------------------------

std::vector<Rational> unit_coset_representatives(int p, int v, int k) {
  if (k < 1) throw DomainError("unit cosets need level k ≥ 1");
  const int64_t P = ipow(p, k);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(P - P / p));
  const Rational scale = p_pow(p, v);
  for (int64_t u = 1; u < P; ++u)
    if (u % p != 0) out.push_back(Rational(u) * scale);
  return out;
}

OrbitChart OrbitChart::point(const Rational& alpha) { return {Kind::Point, alpha, Rational(0)}; }

OrbitChart OrbitChart::gamma_orbit(const Rational& gamma) {
  if (gamma.is_zero()) throw DomainError("gamma must be nonzero");
  return {Kind::Gamma, Rational(0), gamma};
}

OrbitChart OrbitChart::unipotent_orbit(const Rational& gamma) {
  if (gamma.is_zero()) throw DomainError("gamma must be nonzero");
  return {Kind::Unipotent, Rational(0), gamma};
}

RVector OrbitChart::point_at(const Rational& a_param, const Rational& a) const {
  switch (kind) {
    case Kind::Point: return {alpha, 0, 0};
    case Kind::Gamma: return {a_param, a, gamma / a};
    case Kind::Unipotent: return {a, gamma / a};
  }
  return {};
}

std::string OrbitChart::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Point: os << "{f_(" << alpha.str() << ",0,0)}"; break;
    case Kind::Gamma: os << "O_(0,1," << gamma.str() << ") = {f_(t, a, " << gamma.str() << "/a)}, dt dmu(a)/|a|"; break;
    case Kind::Unipotent: os << "O_(1," << gamma.str() << ") = {u_(a, " << gamma.str() << "/a)}, dmu(a)/|a|"; break;
  }
  return os.str();
}

CyclotomicValue hyperbola_integral(const SchwartzFunction& F, const Rational& gamma) {
  if (F.dim() != 2) throw DomainError("hyperbola integral needs a function on k^2");
  if (gamma.is_zero()) throw DomainError("gamma must be nonzero");
  const int p = F.prime(), M = F.outer(), m = F.inner(), g = valuation(gamma, p);
  CyclotomicValue total;
  for (int v = -M; v <= g + M; ++v) {
    const int k = std::max({1, m - v, m - (g - v)});
    CyclotomicValue shell;
    for (const Rational& a : unit_coset_representatives(p, v, k)) shell += F.evaluate({a, gamma / a});
    total += shell.scaled(p_pow(p, -k));
  }
  return total;
}

namespace {

// ∫_{v(a) ∈ [lo, hi]} f(a) dμ(a)/|a| for f constant on cells of ϖ^m𝒪.
CyclotomicValue shell_range_integral(int p, int lo, int hi, int m, const std::function<CyclotomicValue(const Rational&)>& f) {
  CyclotomicValue total;
  for (int v = lo; v <= hi; ++v) {
    const int k = std::max(1, m - v);
    CyclotomicValue shell;
    for (const Rational& a : unit_coset_representatives(p, v, k)) shell += f(a);
    total += shell.scaled(p_pow(p, -k));
  }
  return total;
}

}  // namespace

HyperbolaTail hyperbola_tail(const SchwartzFunction& F) {
  if (F.dim() != 2) throw DomainError("hyperbola tail needs a function on k^2");
  const int p = F.prime(), M = F.outer(), m = F.inner();
  HyperbolaTail t;
  t.floor = -2 * M;
  t.start = std::max(2 * m - 1, t.floor);
  // a ∈ [−M, m−1]: F(a, 0);  γ/a ∈ [−M, m−1]: F(0, η);  in between F(0, 0)
  CyclotomicValue c1 = shell_range_integral(p, -M, m - 1, m, [&](const Rational& a) { return F.evaluate({a, 0}); });
  CyclotomicValue c2 = shell_range_integral(p, -M, m - 1, m, [&](const Rational& e) { return F.evaluate({0, e}); });
  const Rational unit_mass = Rational(p - 1, p);
  t.slope = F.evaluate({0, 0}).scaled(unit_mass);
  t.constant = c1 + c2 + t.slope.scaled(Rational(1 - 2 * m));
  return t;
}

CyclotomicValue tail_integral(int p, int start, const CyclotomicValue& constant, const CyclotomicValue& slope) {
  // Σ_{g ≥ G} (1 − 1/p) p^{-g} (A + B g)
  const Rational x = p_pow(p, -start);
  const Rational q(p, p - 1);
  const Rational s0 = x * q;
  const Rational s1 = x * (Rational(start) * q + Rational(p) / Rational((p - 1) * (p - 1)));
  const Rational w(p - 1, p);
  return constant.scaled(w * s0) + slope.scaled(w * s1);
}

int hyperbola_gamma_level(const SchwartzFunction& F) { return std::max(1, F.inner() + F.outer()); }

DisintegrationReport measure_disintegration_check(const SchwartzFunction& F) {
  if (F.dim() != 2) throw DomainError("disintegration: F must live on u* = k^2");
  if (F.measure().scale != 0) throw DomainError("disintegration: u* carries the dual of the standard measure");
  const int p = F.prime();
  DisintegrationReport rep;
  rep.lhs = F.integral();
  const HyperbolaTail t = hyperbola_tail(F);
  const int k = hyperbola_gamma_level(F);
  for (int g = t.floor; g < t.start; ++g) {
    CyclotomicValue s;
    for (const Rational& gam : unit_coset_representatives(p, g, k)) s += hyperbola_integral(F, gam);
    s = s.scaled(p_pow(p, -g - k));
    rep.shells.emplace_back(g, s);
    rep.rhs += s;
  }
  rep.tail_start = t.start;
  rep.tail = tail_integral(p, t.start, t.constant, t.slope);
  rep.rhs += rep.tail;
  rep.boundary_vanishes = true;
  for (const Rational& gam : unit_coset_representatives(p, t.floor - 1, k))
    if (!hyperbola_integral(F, gam).is_zero()) rep.boundary_vanishes = false;
  rep.tail_matches = true;
  for (int g : {t.start, t.start + 1})
    for (const Rational& gam : unit_coset_representatives(p, g, k))
      if (hyperbola_integral(F, gam) != t.constant + t.slope.scaled(Rational(g))) rep.tail_matches = false;
  rep.exact = rep.lhs == rep.rhs;
  return rep;
}

CyclotomicValue orbital_integral(const OrbitChart& chart, const SchwartzFunction& F) {
  switch (chart.kind) {
    case OrbitChart::Kind::Point:
      if (F.dim() != 3) throw DomainError("point orbits live in g*");
      return F.evaluate(chart.point_at(0, 1));
    case OrbitChart::Kind::Unipotent:
      return hyperbola_integral(F, chart.gamma);
    case OrbitChart::Kind::Gamma: {
      if (F.dim() != 3) throw DomainError("O_(0,1,gamma) lives in g*");
      if (F.measure().scale != 0) throw DomainError("orbital integral: expected the standard measure on g*");
      // integrate the α-line first: (β, γ') ↦ ∫ F(α, β, γ') dα
      const int p = F.prime(), M = F.outer(), m = F.inner();
      const int64_t side = ipow(p, M + m);
      SchwartzFunction G(p, 2, M, m);
      for (std::size_t idx = 0; idx < G.cells(); ++idx) {
        auto d = G.digits_of(idx);
        CyclotomicValue s;
        for (int64_t da = 0; da < side; ++da) s += F.at(F.index_of({da, d[0], d[1]}));
        G.set(idx, s.scaled(p_pow(p, -m)));
      }
      return hyperbola_integral(G, chart.gamma);
    }
  }
  return {};
}

FiberedReport fibered_orbit_integral_check(const SchwartzFunction& F, const Rational& gamma) {
  if (F.dim() != 3) throw DomainError("fibered check: F must live on g*");
  FiberedReport rep;
  rep.chart_side = orbital_integral(OrbitChart::gamma_orbit(gamma), F);
  // x = (a, 0, 0) ranges over G/U with dμ(a)/|a|; x·(f_{0,1,γ} + tE1*) = f_{t, 1/a, γa}
  const int p = F.prime(), M = F.outer(), m = F.inner(), g = valuation(gamma, p);
  const int64_t side = ipow(p, M + m);
  const RVector base{0, 1, gamma};
  for (int v = -M - g; v <= M; ++v) {
    const int k = std::max({1, m + v, m - g - v});
    CyclotomicValue shell;
    for (const Rational& a : unit_coset_representatives(p, v, k)) {
      const RMatrix A = coadjoint_matrix({a, 0, 0});
      for (int64_t dt = 0; dt < side; ++dt) {
        RVector f = base;
        f[0] = Rational(dt) * p_pow(p, -M);
        shell += F.evaluate(A * f);
      }
    }
    rep.fibered_side += shell.scaled(p_pow(p, -k - m));
  }
  rep.exact = rep.chart_side == rep.fibered_side;
  return rep;
}

}  // namespace padic
