#include "padic/heisenberg.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "padic/errors.hpp"

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

int min_valuation(const RVector& a, int p) {
  int v = INT_MAX;
  for (const auto& x : a) v = std::min(v, val(x, p));
  return v;
}

int ceil_half(int x) { return x >= 0 ? (x + 1) / 2 : -((-x) / 2); }

RVector add(const RVector& a, const RVector& b) {
  RVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RVector sub(const RVector& a, const RVector& b) {
  RVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}


bool is_identity(const RMatrix& s) { return s == RMatrix::identity(s.rows()); }

}  // namespace

// ---------------------------------------------------------------------------

SymplecticSpace::SymplecticSpace(int p, std::size_t d) : p_(p), d_(d), B_(AlternatingForm::standard(d)) {
  if (p < 3 || p % 2 == 0) throw DomainError("Heisenberg constructions need an odd prime");
}

bool SymplecticSpace::is_symplectic(const RMatrix& s) const {
  return s.rows() == dim() && s.cols() == dim() && s.transpose() * B_.matrix() * s == B_.matrix();
}

HeisenbergElement multiply(const SymplecticSpace& V, const HeisenbergElement& a, const HeisenbergElement& b) {
  return {add(a.v, b.v), a.t + b.t + V.B(a.v, b.v) / Rational(2)};
}

HeisenbergElement inverse(const HeisenbergElement& a) {
  RVector v(a.v.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = -a.v[i];
  return {v, -a.t};
}

// ---------------------------------------------------------------------------

SelfDualLattice::SelfDualLattice(const SymplecticSpace& V, const Rational& a0)
    : p_(V.prime()), d_(V.half_dim()), a0_(a0), J_(V.form().matrix()) {
  if (a0.is_zero()) throw DomainError("a0 must be nonzero");
  const int v = valuation(a0, p_);
  const int je = (-v >= 0) ? (-v) / 2 : -((v + 1) / 2);  // ⌊−v/2⌋
  const int jf = -v - je;
  eps_.assign(2 * d_, 0);
  for (std::size_t i = 0; i < d_; ++i) {
    eps_[i] = je;
    eps_[d_ + i] = jf;
  }
  if (!verify_self_dual()) throw DomainError("lattice construction is not self-dual");
}

Lattice SelfDualLattice::lattice() const {
  RVector diag;
  for (int e : eps_) diag.push_back(p_pow(p_, e));
  return Lattice(p_, RMatrix::diagonal(diag));
}

bool SelfDualLattice::verify_self_dual() const {
  Lattice r = lattice();
  return r.dual(J_.scaled(a0_)) == r;
}

bool SelfDualLattice::stabilizes(const RMatrix& x) const {
  Lattice r = lattice();
  if (x.det().is_zero()) return false;
  return Lattice(p_, x * r.basis()) == r;
}

std::string SelfDualLattice::str() const {
  std::ostringstream os;
  os << "r = ";
  for (std::size_t i = 0; i < eps_.size(); ++i)
    os << (i ? " + " : "") << "p^" << eps_[i] << "O" << (i < d_ ? "e" : "f") << (i % d_ + 1);
  return os.str();
}

// ---------------------------------------------------------------------------

LatticeOperator LatticeOperator::identity(std::size_t n) {
  LatticeOperator out(n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = CyclotomicValue(1);
  return out;
}

LatticeOperator LatticeOperator::operator*(const LatticeOperator& o) const {
  if (n_ != o.n_) throw DomainError("operator sizes differ");
  LatticeOperator out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const auto& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (!o(k, j).is_zero()) out(i, j) += a * o(k, j);
    }
  return out;
}

LatticeOperator LatticeOperator::operator+(const LatticeOperator& o) const {
  if (n_ != o.n_) throw DomainError("operator sizes differ");
  LatticeOperator out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
  return out;
}

LatticeOperator LatticeOperator::scaled(const CyclotomicValue& c) const {
  LatticeOperator out = *this;
  for (auto& x : out.a_) x = x * c;
  return out;
}

LatticeOperator LatticeOperator::adjoint() const {
  LatticeOperator out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(j, i) = (*this)(i, j).conj();
  return out;
}

std::vector<CyclotomicValue> LatticeOperator::apply(const std::vector<CyclotomicValue>& x) const {
  if (x.size() != n_) throw DomainError("vector size differs from operator");
  std::vector<CyclotomicValue> out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (!(*this)(i, j).is_zero() && !x[j].is_zero()) out[i] += (*this)(i, j) * x[j];
  return out;
}

CyclotomicValue LatticeOperator::trace() const {
  CyclotomicValue s;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

bool LatticeOperator::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const CyclotomicValue& v) { return v.is_zero(); });
}

// ---------------------------------------------------------------------------

LatticeModel::LatticeModel(int p, std::size_t d, const Rational& a0)
    : V_(p, d), a0_(a0), r_(V_, a0), char_(p) {}

std::size_t LatticeModel::window_size(int N) const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < V_.dim(); ++i) n *= static_cast<std::size_t>(ipow(prime(), N));
  return n;
}

RVector LatticeModel::representative(int N, std::size_t idx) const {
  const std::size_t n = V_.dim();
  const int64_t side = ipow(prime(), N);
  RVector u(n);
  for (std::size_t k = n; k-- > 0;) {
    u[k] = Rational(static_cast<int64_t>(idx % side)) * p_pow(prime(), r_.exponents()[k] - N);
    idx /= side;
  }
  return u;
}

std::size_t LatticeModel::locate(int N, const RVector& v, RVector& rho) const {
  const std::size_t n = V_.dim();
  const int64_t side = ipow(prime(), N);
  rho.assign(n, Rational(0));
  std::size_t idx = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const int lo = r_.exponents()[k] - N;
    if (!v[k].is_zero() && valuation(v[k], prime()) < lo) throw DomainError("vector outside the lattice-model window");
    int64_t dig = residue_digits(v[k], prime(), lo, N);
    rho[k] = v[k] - Rational(dig) * p_pow(prime(), lo);
    idx = idx * static_cast<std::size_t>(side) + static_cast<std::size_t>(dig);
  }
  return idx;
}

int LatticeModel::level_of(const RVector& v) const {
  int N = 0;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) N = std::max(N, r_.exponents()[k] - valuation(v[k], prime()));
  return N;
}

WindowedVector LatticeModel::embed(const WindowedVector& x, int N) const {
  if (N < x.N) throw DomainError("embed: window must grow");
  WindowedVector out{N, std::vector<CyclotomicValue>(window_size(N))};
  RVector rho;
  for (std::size_t i = 0; i < x.values.size(); ++i)
    if (!x.values[i].is_zero()) out.values[locate(N, representative(x.N, i), rho)] = x.values[i];
  return out;
}

LatticeOperator LatticeModel::pi_matrix(const HeisenbergElement& h, int N) const {
  if (level_of(h.v) > N) throw DomainError("translation leaves the window");
  const std::size_t n = window_size(N);
  LatticeOperator A(n);
  RVector rho;
  for (std::size_t c = 0; c < n; ++c) {
    RVector u = representative(N, c);
    std::size_t cp = locate(N, add(u, h.v), rho);  // u + w = u_{c'} + ρ'
    RVector up = representative(N, cp);
    for (auto& x : rho) x = -x;  // u_{c'} − w = u_c + ρ
    A(cp, c) = chi(h.t - V_.B(up, h.v) / Rational(2) + V_.B(u, rho) / Rational(2));
  }
  return A;
}

LatticeOperator LatticeModel::sigma_matrix(const RMatrix& x, int N) const {
  if (!V_.is_symplectic(x)) throw DomainError("sigma: map is not symplectic");
  if (!r_.stabilizes(x)) throw DomainError("sigma: map does not stabilize the self-dual lattice");
  const RMatrix xinv = x.inverse();
  const std::size_t n = window_size(N);
  LatticeOperator A(n);
  RVector rho;
  for (std::size_t cp = 0; cp < n; ++cp) {
    std::size_t c = locate(N, xinv * representative(N, cp), rho);
    A(cp, c) = chi(V_.B(representative(N, c), rho) / Rational(2));
  }
  return A;
}

LatticeOperator LatticeModel::density_matrix(const SchwartzFunction& g, int N) const {
  const std::size_t n = window_size(N);
  LatticeOperator A(n);
  std::vector<RVector> reps(n);
  for (std::size_t i = 0; i < n; ++i) reps[i] = representative(N, i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = kernel(g, reps[i], reps[j]);
  return A;
}

CyclotomicValue LatticeModel::kernel(const SchwartzFunction& g, const RVector& up, const RVector& u) const {
  const int p = prime();
  const std::size_t n = V_.dim();
  if (g.prime() != p || g.dim() != static_cast<int>(n)) throw DomainError("kernel: density lives on another space");
  if (g.is_zero()) return CyclotomicValue();
  const RVector diff = sub(up, u), z = add(up, u);
  const auto& eps = r_.exponents();
  // per coordinate m_k ∈ p^{s_k}𝒪 / p^{L}𝒪
  std::vector<int> s(n);
  for (std::size_t k = 0; k < n; ++k) {
    const int vd = val(diff[k], p);
    if (vd < -g.outer() && vd < eps[k]) return CyclotomicValue();  // u'−u−m never meets the support
    s[k] = std::max(eps[k], std::min(-g.outer(), vd));
  }
  const int vz = min_valuation(z, p);
  int L = g.inner();
  if (vz != INT_MAX) L = std::max(L, -valuation(a0_, p) - vz);
  std::vector<int64_t> count(n);
  Rational vol(1);
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (s[k] >= L) {
      count[k] = 1;
      vol *= p_pow(p, -s[k]);
    } else {
      count[k] = ipow(p, L - s[k]);
      vol *= p_pow(p, -L);
    }
    total *= static_cast<std::size_t>(count[k]);
  }
  CyclotomicValue acc;
  RVector m(n), arg(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t k = n; k-- > 0;) {
      m[k] = Rational(static_cast<int64_t>(rest % count[k])) * p_pow(p, s[k]);
      rest /= count[k];
    }
    for (std::size_t k = 0; k < n; ++k) arg[k] = diff[k] - m[k];
    CyclotomicValue gv = g.evaluate(arg);
    if (gv.is_zero()) continue;
    acc += gv * chi(V_.B(z, m) / Rational(2));
  }
  return (acc * chi(V_.B(up, u) / Rational(2))).scaled(vol);
}

// ---------------------------------------------------------------------------

WindowedVector pi_R_apply(const LatticeModel& L, const HeisenbergElement& h, const WindowedVector& phi) {
  const int N = std::max(phi.N, L.level_of(h.v));
  WindowedVector x = L.embed(phi, N);
  return {N, L.pi_matrix(h, N).apply(x.values)};
}

WindowedVector sigma_R_apply(const LatticeModel& L, const RMatrix& x, const WindowedVector& phi) {
  return {phi.N, L.sigma_matrix(x, phi.N).apply(phi.values)};
}

SchwartzFunction reduce_density(const LatticeModel& L, const SchwartzFunction& alpha) {
  const int p = L.prime();
  const int n = static_cast<int>(L.space().dim());
  if (alpha.dim() != n + 1 || alpha.prime() != p) throw DomainError("density must live on H-coordinates (v, t)");
  const int level = std::max(alpha.inner(), -valuation(L.a0(), p));
  SchwartzFunction a = alpha.refined(alpha.outer(), level);
  SchwartzFunction tw = SchwartzFunction::from_function(
      p, n + 1, a.outer(), a.inner(), [&](const RVector& x) { return a.evaluate(x) * L.chi(x[n]); },
      alpha.measure());
  return tw.integrate_trailing(n);
}

int trace_window(const LatticeModel& L, const RMatrix& s, const SchwartzFunction& g) {
  const int p = L.prime();
  const auto& eps = L.lattice().exponents();
  const std::size_t n = eps.size(), d = n / 2;
  int N = 0;
  if (is_identity(s)) {
    // the diagonal vanishes unless ς(a₀B(u, ·)) is trivial on r ∩ ϖ^{m_g}
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t partner = i < d ? i + d : i - d;
      N = std::max(N, g.inner() - eps[partner]);
    }
    return N;
  }
  RMatrix D = s.inverse() - RMatrix::identity(n);
  if (D.det().is_zero()) throw DomainError("trace: s has nonzero fixed vectors (only s = 1 or V(s) = 0 are supported)");
  // needs (s⁻¹−1)u ∈ supp g + r
  RMatrix T = D.inverse();
  for (std::size_t i = 0; i < n; ++i) {
    int b = INT_MAX;
    for (std::size_t j = 0; j < n; ++j)
      if (!T(i, j).is_zero()) b = std::min(b, valuation(T(i, j), p) + std::min(-g.outer(), eps[j]));
    if (b != INT_MAX) N = std::max(N, eps[i] - b);
  }
  (void)p;
  return N;
}

TraceReport trace_sigma_pi(const LatticeModel& L, const RMatrix& s, const SchwartzFunction& g, bool with_matrix) {
  TraceReport rep;
  rep.window = trace_window(L, s, g);
  const int N = rep.window;
  const RMatrix sinv = s.inverse();
  const std::size_t n = L.window_size(N);
  for (std::size_t c = 0; c < n; ++c) {
    RVector u = L.representative(N, c);
    rep.diagonal_sum += L.kernel(g, sinv * u, u);
  }
  if (with_matrix) {
    rep.matrix_trace = (L.sigma_matrix(s, N) * L.density_matrix(g, N)).trace();
    rep.matrix_checked = true;
  }
  return rep;
}

SchwartzFunction transported_density(const LatticeModel& L, const SchwartzFunction& alpha, const RMatrix& T,
                                     const RMatrix& G, const Rational& c) {
  const int p = L.prime();
  const int n = static_cast<int>(L.space().dim());
  if (alpha.dim() != n) throw DomainError("transported_density: α must live on V");
  const int vT = min_valuation(T, p), vTi = min_valuation(T.inverse(), p);
  const int vG = min_valuation(G, p), vA = valuation(L.a0(), p);
  const int Ma = alpha.outer();
  const int Mw = std::max(0, Ma - vTi);
  int lev = std::max(alpha.inner() - vT, -Mw);
  if (vG != INT_MAX) {
    lev = std::max(lev, -vA - vG + Ma - vT);
    lev = std::max(lev, ceil_half(-vA - vG) - vT);
  }
  return SchwartzFunction::from_function(
      p, n, Mw, lev,
      [&](const RVector& w) {
        RVector v = T * w;
        CyclotomicValue a = alpha.evaluate(v);
        if (a.is_zero()) return a;
        return (a * L.chi(dot(v, G * v) / Rational(2))).scaled(c);
      },
      alpha.measure());
}

// ---------------------------------------------------------------------------

namespace {

std::vector<MetaplecticCharacterValue> search_decompositions(const LatticeModel& L, const RMatrix& s, int sign,
                                                             bool stop_at_first) {
  const int p = L.prime();
  const std::size_t n = L.space().dim(), d = n / 2;
  std::vector<MetaplecticCharacterValue> out;
  if (sign != 1 && sign != -1) throw DomainError("lift sign must be +1 or -1");
  if (is_identity(s)) {
    out.push_back({CyclotomicValue(sign), "V(s) = V; W1 = W2 = 0", false, CyclotomicValue(1), sign});
    return out;
  }
  if ((RMatrix::identity(n) - s).det().is_zero())
    throw DomainError("phi_a0: only s = 1 or s without fixed vectors are supported");
  std::vector<std::pair<RMatrix, std::string>> candidates;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    RMatrix ell(n, d);
    std::string name = "span(";
    for (std::size_t i = 0; i < d; ++i) {
      const bool f = (mask >> i) & 1u;
      ell(f ? d + i : i, i) = 1;
      name += (i ? "," : "") + std::string(f ? "f" : "e") + std::to_string(i + 1);
    }
    candidates.emplace_back(ell, name + ")");
  }
  if (d == 1)
    for (int64_t lam = 1; lam < p; ++lam) {
      RMatrix ell(2, 1);
      ell(0, 0) = 1, ell(1, 0) = lam;
      candidates.emplace_back(ell, "span(e1+" + std::to_string(lam) + "f1)");
    }
  // W1 = V first: s-stable lagrangians
  for (const auto& [ell, name] : candidates) {
    std::vector<RVector> cols;
    for (std::size_t j = 0; j < d; ++j) cols.push_back(ell.column(j));
    RMatrix image = s * ell;
    for (std::size_t j = 0; j < d; ++j) cols.push_back(image.column(j));
    if (RMatrix::from_columns(cols).rank() == d) {
      out.push_back({CyclotomicValue(sign), "W1 = V, l1 = " + name + " (s-stable)", false, CyclotomicValue(1), sign});
      if (stop_at_first) return out;
    }
  }
  for (const auto& [ell, name] : candidates) {
    std::vector<RVector> cols;
    for (std::size_t j = 0; j < d; ++j) cols.push_back(ell.column(j));
    RMatrix image = s * ell;
    for (std::size_t j = 0; j < d; ++j) cols.push_back(image.column(j));
    if (RMatrix::from_columns(cols).rank() != n) continue;
    QuadraticForm Q = cayley_form(p, L.space().form(), s, ell);
    CyclotomicValue g = weil_index(Q, L.a0()).value;
    out.push_back({g.conj().scaled(Rational(sign)), "W2 = V, l2 = " + name + ", Q = " + Q.str(), true, g, sign});
    if (stop_at_first) return out;
  }
  if (out.empty()) throw DomainError("phi_a0: no decomposition found among the searched lagrangians");
  return out;
}

}  // namespace

MetaplecticCharacterValue phi_a0(const LatticeModel& L, const RMatrix& s, int lift_sign) {
  return search_decompositions(L, s, lift_sign, true).front();
}

std::vector<MetaplecticCharacterValue> phi_a0_all(const LatticeModel& L, const RMatrix& s, int lift_sign) {
  return search_decompositions(L, s, lift_sign, false);
}

CyclotomicValue det_factor(const LatticeModel& L, const RMatrix& s) {
  if (is_identity(s)) return CyclotomicValue(1);
  Rational d = (RMatrix::identity(s.rows()) - s).det();
  return CyclotomicValue::sqrt_rational(L.prime(), abs_p(d, L.prime()).inverse());
}

FixedPointReport verify_fixed_point_formula(const LatticeModel& L, const RMatrix& s, const SchwartzFunction& beta,
                                            int lift_sign) {
  const int p = L.prime();
  const std::size_t n = L.space().dim();
  FixedPointReport rep;
  rep.character = AdditiveCharacter::description() + ", varsigma_a0(t) = varsigma(a0 t), a0 = " + L.a0().str();
  MetaplecticCharacterValue phi = phi_a0(L, s, lift_sign);
  rep.phi = phi.value;
  if (is_identity(s)) {
    if (beta.dim() != static_cast<int>(n) + 1) throw DomainError("s = 1: beta must live on H-coordinates");
    SchwartzFunction g = reduce_density(L, beta);
    auto tr = trace_sigma_pi(L, s, g);
    rep.window = tr.window;
    rep.lhs = tr.diagonal_sum;
    // ∫_{V*} β̂(λ, a₀) dλ on the slice t* = a₀ of the transform
    SchwartzFunction F = fourier(beta);
    SchwartzFunction slice = SchwartzFunction::from_function(
        p, static_cast<int>(n), F.outer(), F.inner(),
        [&](const RVector& lam) {
          RVector l = lam;
          l.push_back(L.a0());
          return F.evaluate(l);
        },
        F.measure());
    const Rational liouville = abs_p(L.a0(), p).inverse();  // |a₀|^{-d}, d = 1 per pair
    Rational c(1);
    for (std::size_t i = 0; i < n / 2; ++i) c *= liouville;
    rep.orbital = slice.integral().scaled(c);
    rep.liouville = "pushforward of the self-dual measure of (V, a0 B): |a0|^{-dim V/2} dlambda";
    rep.instance = "s = 1";
  } else {
    if (beta.dim() != 1) throw DomainError("V(s) = 0: beta must live on the centre kE");
    const RMatrix one = RMatrix::identity(n);
    const RMatrix T = (one - s).inverse();
    const Rational det_abs = abs_p((one - s).det(), p);
    CyclotomicValue bhat = fourier(beta).evaluate({L.a0()});
    // reduced density of the descent of 1_{𝒪^{2d+1}} ⊗ β
    const RMatrix G = (L.space().form().matrix() * s).scaled(Rational(-1));
    SchwartzFunction g0 = transported_density(L, SchwartzFunction::indicator(p, static_cast<int>(n), 0), T, G,
                                              det_abs.inverse());
    auto tr = trace_sigma_pi(L, s, g0);
    rep.window = tr.window;
    rep.lhs = tr.diagonal_sum * bhat;
    rep.orbital = bhat;
    rep.liouville = "orbit is the single point E*_a0, counting measure";
    rep.instance = "V(s) = 0";
  }
  rep.rhs = rep.phi * det_factor(L, s) * rep.orbital;
  rep.abs_error = std::abs(rep.lhs.to_complex() - rep.rhs.to_complex());
  rep.exact = rep.lhs == rep.rhs;
  return rep;
}

YacaReport yaca_check(const LatticeModel& L, const RMatrix& z, const SchwartzFunction& alpha, int lift_sign) {
  const int p = L.prime();
  const std::size_t n = L.space().dim();
  CyclotomicValue total = alpha.integral();
  if (!total.is_rational() || total.is_zero()) throw DomainError("yaca_check: ∫α must be a nonzero rational");
  SchwartzFunction a = alpha.scaled(CyclotomicValue(total.rational_value().inverse()));
  const RMatrix one = RMatrix::identity(n);
  const RMatrix D = z.inverse() - one;
  if (D.det().is_zero()) throw DomainError("yaca_check: z has fixed vectors");
  // exp(z⁻¹v)exp(−v) = ((z⁻¹−1)v, −½B(z⁻¹v, v))
  const RMatrix G = (z.inverse().transpose() * L.space().form().matrix()).scaled(Rational(-1));
  SchwartzFunction g = transported_density(L, a, D.inverse(), G, abs_p(D.det(), p).inverse());
  YacaReport rep;
  rep.trace = trace_sigma_pi(L, z, g).diagonal_sum;
  rep.phi = phi_a0(L, z, lift_sign);
  rep.predicted = rep.phi.value * det_factor(L, z);
  rep.abs_error = std::abs(rep.trace.to_complex() - rep.predicted.to_complex());
  rep.exact = rep.trace == rep.predicted;
  return rep;
}

}  // namespace padic
