#include "padic/plancherel.hpp"

#include <algorithm>

#include "padic/errors.hpp"

namespace padic {

namespace {

Rational p_pow(int p, int e) { return e >= 0 ? Rational(ipow(p, e)) : Rational(1, ipow(p, -e)); }

int max_value_level(const SchwartzFunction& f) {
  int K = 0;
  for (const auto& v : f.table()) K = std::max(K, v.level());
  return K;
}

}  // namespace

void require_group_function(const SchwartzFunction& phi) {
  if (phi.dim() != 3) throw DomainError("functions on G have coordinates (a, x, y)");
  if (phi.measure().scale != 0) throw DomainError("functions on G are integrated against |a|^-1 da dx dy");
  const int64_t side = phi.side();
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(side * side); ++idx)
    if (!phi.at(idx).is_zero()) throw DomainError("function on G must vanish near a = 0");
}

// ---------------------------------------------------------------------------

UnitGroupFunction::UnitGroupFunction(int p, int level) : p_(p), k_(level) {
  if (level < 1) throw DomainError("unit cosets need level k >= 1");
}

std::pair<int, int64_t> UnitGroupFunction::key(const Rational& b) const {
  if (b.is_zero()) throw DomainError("functions on k^x are not defined at 0");
  const int v = valuation(b, p_);
  const Rational u = b / p_pow(p_, v);
  const int64_t P = ipow(p_, k_);
  return {v, mulmod(mod_floor(u.num(), P), invmod(mod_floor(u.den(), P), P), P)};
}

void UnitGroupFunction::set(const Rational& b, const CyclotomicValue& v) {
  if (v.is_zero()) values_.erase(key(b));
  else values_[key(b)] = v;
}

CyclotomicValue UnitGroupFunction::evaluate(const Rational& b) const {
  auto it = values_.find(key(b));
  return it == values_.end() ? CyclotomicValue() : it->second;
}

UnitGroupFunction UnitGroupFunction::refined(int level) const {
  if (level < k_) throw DomainError("refined: level must grow");
  UnitGroupFunction out(p_, level);
  const int64_t P = ipow(p_, k_), step = ipow(p_, level - k_);
  for (const auto& [k, v] : values_)
    for (int64_t t = 0; t < step; ++t) out.values_[{k.first, k.second + t * P}] = v;
  return out;
}

std::vector<std::pair<Rational, CyclotomicValue>> UnitGroupFunction::entries() const {
  std::vector<std::pair<Rational, CyclotomicValue>> out;
  for (const auto& [k, v] : values_) out.emplace_back(Rational(k.second) * p_pow(p_, k.first), v);
  return out;
}

bool operator==(const UnitGroupFunction& a, const UnitGroupFunction& b) {
  if (a.p_ != b.p_) return false;
  const int k = std::max(a.k_, b.k_);
  return a.refined(k).values_ == b.refined(k).values_;
}

UnitGroupFunction pi_gamma_apply(const Rational& gamma, const GammaGroupElement& g, const UnitGroupFunction& psi) {
  const int p = psi.prime();
  if (g.a.is_zero()) throw DomainError("a must be invertible");
  const int va = valuation(g.a, p);
  int level = psi.level();
  for (const auto& [c, v] : psi.entries()) {
    const int vb = va + valuation(c, p);
    if (!g.x.is_zero()) level = std::max(level, vb - valuation(g.x, p));
    if (!g.y.is_zero()) level = std::max(level, -(valuation(gamma, p) + valuation(g.y, p) + vb));
  }
  AdditiveCharacter chi(p);
  const UnitGroupFunction fine = psi.refined(level);
  UnitGroupFunction out(p, level);
  for (const auto& [c, v] : fine.entries()) {
    const Rational b = g.a * c;
    out.set(b, chi(g.x / b + b * gamma * g.y) * v);
  }
  return out;
}

// ---------------------------------------------------------------------------

KernelEvaluator::KernelEvaluator(const SchwartzFunction& phi)
    : phi_(phi),
      K_(std::max({1, phi.outer() + phi.inner(), max_value_level(phi)})),
      acc_(phi.prime(), K_) {
  require_group_function(phi_);
  prepared_.reserve(phi_.cells());
  for (const auto& v : phi_.table()) prepared_.push_back(acc_.prepare(v));
}

CyclotomicValue KernelEvaluator::fiber_sum(const Rational& a, const Rational& xi, const Rational& eta) const {
  // Σ over (x, y)-cells of φ(a, x₀, y₀) ς(ξx₀ + ηy₀) — the cell volumes are
  // applied by the caller
  const int p = phi_.prime(), M = phi_.outer(), m = phi_.inner();
  if (!a.is_zero() && valuation(a, p) < -M) return CyclotomicValue();
  const int64_t side = phi_.side();
  const int64_t da = residue_digits(a, p, -M, M + m);
  if (da == 0) return CyclotomicValue();
  const int64_t P = ipow(p, K_);
  const Rational shift = p_pow(p, -M);
  const int64_t rx = residue_digits(xi * shift, p, -K_, K_);
  const int64_t ry = residue_digits(eta * shift, p, -K_, K_);
  acc_.clear();
  const std::size_t base = static_cast<std::size_t>(da * side * side);
  int64_t jx = 0;
  for (int64_t dx = 0; dx < side; ++dx, jx = (jx + rx) % P) {
    int64_t j = jx;
    const std::size_t row = base + static_cast<std::size_t>(dx * side);
    for (int64_t dy = 0; dy < side; ++dy, j = (j + ry) % P) {
      const auto& pv = prepared_[row + static_cast<std::size_t>(dy)];
      if (!pv.zero()) acc_.add(pv, 0, j);
    }
  }
  return acc_.result();
}

CyclotomicValue KernelEvaluator::entry(const Rational& gamma, const Rational& b, const Rational& c, int k) const {
  const int p = phi_.prime(), m = phi_.inner();
  const Rational xi = b.inverse(), eta = gamma * b;
  // ∫_{x₀+ϖ^m𝒪} ς(ξx)dx vanishes unless v(ξ) ≥ −m
  if (valuation(xi, p) < -m || valuation(eta, p) < -m) return CyclotomicValue();
  const Rational r = b / c;
  const int vr = valuation(r, p);
  CyclotomicValue total;
  if (vr + k >= m) {
    total = fiber_sum(r, xi, eta).scaled(p_pow(p, -k));
  } else {
    // split r(1 + ϖ^k𝒪) into cosets fine enough for the a-cells of φ
    const int kk = m - vr;
    const int64_t P = ipow(p, kk), step = ipow(p, k);
    for (int64_t u = 1; u < P; u += step) total += fiber_sum(r * Rational(u), xi, eta);
    total = total.scaled(p_pow(p, -kk));
  }
  return total.scaled(p_pow(p, -2 * m));
}

ThetaWindow theta_window(const Rational& gamma, const SchwartzFunction& phi) {
  const int p = phi.prime(), M = phi.outer(), m = phi.inner(), g = valuation(gamma, p);
  ThetaWindow w;
  // K(b, b) = F(b⁻¹, γb) needs |b⁻¹|, |γb| ≤ p^m; level from the constancy of F
  w.vlo = -m - g;
  w.vhi = m;
  w.level = std::max(1, M + m);
  if (w.vhi >= w.vlo)
    w.cosets = static_cast<std::size_t>(w.vhi - w.vlo + 1) * static_cast<std::size_t>((p - 1) * ipow(p, w.level - 1));
  return w;
}

std::vector<Rational> window_representatives(int p, const ThetaWindow& w) {
  std::vector<Rational> out;
  for (int v = w.vlo; v <= w.vhi; ++v) {
    auto r = unit_coset_representatives(p, v, w.level);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

LatticeOperator kernel_matrix(const KernelEvaluator& K, const Rational& gamma, const std::vector<Rational>& reps, int k) {
  LatticeOperator A(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j) A(i, j) = K.entry(gamma, reps[i], reps[j], k);
  return A;
}

CyclotomicValue theta_kernel_trace(const KernelEvaluator& K, const Rational& gamma, ThetaWindow* used) {
  if (gamma.is_zero()) throw DomainError("gamma must be nonzero");
  const ThetaWindow w = theta_window(gamma, K.function());
  if (used) *used = w;
  CyclotomicValue tr;
  for (const Rational& b : window_representatives(K.function().prime(), w)) tr += K.entry(gamma, b, b, w.level);
  return tr;
}

SchwartzFunction unipotent_slice_transform(const SchwartzFunction& phi) {
  require_group_function(phi);
  SchwartzFunction slice = SchwartzFunction::from_function(
      phi.prime(), 2, phi.outer(), phi.inner(), [&](const RVector& xy) { return phi.evaluate({1, xy[0], xy[1]}); });
  return fourier(slice);
}

CyclotomicValue theta_closed_form(const SchwartzFunction& slice_transform, const Rational& gamma) {
  // b ↦ a = b⁻¹ turns ∫F(b⁻¹, γb)d^×b into ∫F(a, γ/a)d^×a
  return hyperbola_integral(slice_transform, gamma);
}

CharacterReport theta_gamma(const Rational& gamma, const SchwartzFunction& phi) {
  KernelEvaluator K(phi);
  CharacterReport rep;
  rep.gamma = gamma;
  rep.kernel_trace = theta_kernel_trace(K, gamma, &rep.window);
  rep.closed_form = theta_closed_form(unipotent_slice_transform(phi), gamma);
  rep.agree = rep.kernel_trace == rep.closed_form;
  return rep;
}

// ---------------------------------------------------------------------------

int64_t exp_series_residue(const Rational& X, int p, int N, bool shifted) {
  if (N <= 0) return 0;
  const int64_t P = ipow(p, N);
  if (X.is_zero()) return 1 % P;
  const int vx = valuation(X, p);
  if (vx < 1) throw DomainError("the exponential series needs v(X) >= 1");
  const Rational ux = X / p_pow(p, vx);
  const int64_t u = mulmod(mod_floor(ux.num(), P), invmod(mod_floor(ux.den(), P), P), P);
  // term_n = X^n / (n + s)!, tracked as p^e · w with w a unit mod P
  const int s = shifted ? 1 : 0;
  int e = 0;
  int64_t w = 1;
  int64_t sum = 1 % P;
  for (int n = 1; n <= 2 * N + 4; ++n) {
    e += vx;
    w = mulmod(w, u, P);
    int64_t d = n + s;
    const int vd = valuation_i64(d, p);
    e -= vd;
    for (int t = 0; t < vd; ++t) d /= p;
    w = mulmod(w, invmod(mod_floor(d, P), P), P);
    if (e < N) sum = (sum + mulmod(w, ipow(p, e), P)) % P;
  }
  return sum;
}

int identity_support_exponent(const SchwartzFunction& phi) {
  const int p = phi.prime(), m = phi.inner();
  int j = m;
  for (std::size_t idx = 0; idx < phi.cells(); ++idx) {
    if (phi.at(idx).is_zero()) continue;
    const Rational a = phi.point(idx)[0];
    const Rational d = a - Rational(1);
    const int va = d.is_zero() ? m : std::min(m, valuation(d, p));
    j = std::min(j, va);
  }
  return std::max(j, 0);
}

SchwartzFunction exp_pullback(const SchwartzFunction& phi) {
  require_group_function(phi);
  const int p = phi.prime(), M = phi.outer(), m = phi.inner();
  if (identity_support_exponent(phi) < 1)
    throw DomainError("exp chart: support must lie in (1 + p O) x k^2 (epsilon = 1/p)");
  const int N = std::max(1, m + M);
  return SchwartzFunction::from_function(p, 3, M, m + M, [&](const RVector& v) {
    const Rational& X = v[0];
    if (!X.is_zero() && valuation(X, p) < 1) return CyclotomicValue();
    const Rational a(exp_series_residue(X, p, N));
    const Rational hp(exp_series_residue(X, p, N, true));
    const Rational hm(exp_series_residue(-X, p, N, true));
    return phi.evaluate({a, v[1] * hp, v[2] * hm});
  });
}

std::vector<CharacterFormulaReport> character_formula_check_s1(const std::vector<Rational>& gammas,
                                                               const SchwartzFunction& phi) {
  const int epsilon = identity_support_exponent(phi);
  KernelEvaluator K(phi);
  const SchwartzFunction F = unipotent_slice_transform(phi);
  // the pullback of d_G by exp is dX dY dZ on ϖ𝒪 × k², so no Jacobian factor
  const SchwartzFunction Phi = fourier(exp_pullback(phi));
  std::vector<CharacterFormulaReport> out;
  for (const Rational& gamma : gammas) {
    CharacterFormulaReport rep;
    rep.gamma = gamma;
    rep.epsilon = epsilon;
    rep.kernel_trace = theta_kernel_trace(K, gamma);
    rep.closed_form = theta_closed_form(F, gamma);
    rep.orbital = orbital_integral(OrbitChart::gamma_orbit(gamma), Phi);
    rep.dual_method_agree = rep.kernel_trace == rep.closed_form;
    rep.exact = rep.dual_method_agree && rep.kernel_trace == rep.orbital;
    out.push_back(std::move(rep));
  }
  return out;
}

CharacterFormulaReport character_formula_check_s1(const Rational& gamma, const SchwartzFunction& phi) {
  return character_formula_check_s1(std::vector<Rational>{gamma}, phi).front();
}

bool in_tube(const Rational& a_s, int j, int p, const Rational& a) {
  if (a.is_zero()) return false;
  const Rational d = a / a_s - Rational(1);
  return d.is_zero() || valuation(d, p) >= j;
}

VanishingReport character_vanishing_check(const Rational& gamma, const Rational& a_s, int j,
                                          const SchwartzFunction& phi) {
  const int p = phi.prime();
  if (valuation(a_s, p) != 0) throw DomainError("tube centre must be a unit");
  if (j < 1 || j > phi.inner()) throw DomainError("tube radius must satisfy 1 <= j <= m");
  for (std::size_t idx = 0; idx < phi.cells(); ++idx)
    if (!phi.at(idx).is_zero() && !in_tube(a_s, j, p, phi.point(idx)[0]))
      throw DomainError("function is not supported in the tube");
  VanishingReport rep;
  rep.gamma = gamma;
  rep.a_s = a_s;
  rep.epsilon = j;
  rep.tube_separated = !in_tube(a_s, j, p, Rational(1));
  KernelEvaluator K(phi);
  rep.kernel_trace = theta_kernel_trace(K, gamma);
  rep.closed_form = theta_closed_form(unipotent_slice_transform(phi), gamma);
  rep.exact_zero = rep.kernel_trace.is_zero() && rep.closed_form.is_zero();
  return rep;
}

PlancherelReport plancherel_verify(const SchwartzFunction& phi) {
  const int p = phi.prime();
  PlancherelReport rep;
  rep.lhs = phi.evaluate({1, 0, 0});
  KernelEvaluator K(phi);
  const SchwartzFunction F = unipotent_slice_transform(phi);
  const HyperbolaTail t = hyperbola_tail(F);
  rep.floor = t.floor;
  rep.tail_start = t.start;
  rep.gamma_level = hyperbola_gamma_level(F);
  rep.dual_method_agree = true;
  auto both = [&](const Rational& gam, CyclotomicValue& kern, CyclotomicValue& closed) {
    kern = theta_kernel_trace(K, gam);
    closed = theta_closed_form(F, gam);
    if (kern != closed) rep.dual_method_agree = false;
  };
  for (int g = t.floor; g < t.start; ++g) {
    PlancherelShell sh;
    sh.valuation = g;
    for (const Rational& gam : unit_coset_representatives(p, g, rep.gamma_level)) {
      CyclotomicValue a, b;
      both(gam, a, b);
      sh.kernel += a;
      sh.closed += b;
    }
    const Rational vol = p_pow(p, -g - rep.gamma_level);
    sh.kernel = sh.kernel.scaled(vol);
    sh.closed = sh.closed.scaled(vol);
    rep.rhs += sh.kernel;
    rep.shells.push_back(sh);
  }
  rep.tail = tail_integral(p, t.start, t.constant, t.slope);
  rep.rhs += rep.tail;
  rep.boundary_vanishes = true;
  for (const Rational& gam : unit_coset_representatives(p, t.floor - 1, rep.gamma_level)) {
    CyclotomicValue a, b;
    both(gam, a, b);
    if (!a.is_zero() || !b.is_zero()) rep.boundary_vanishes = false;
  }
  rep.tail_matches = true;
  for (int g : {t.start, t.start + 1}) {
    const CyclotomicValue expected = t.constant + t.slope.scaled(Rational(g));
    for (const Rational& gam : unit_coset_representatives(p, g, rep.gamma_level)) {
      CyclotomicValue a, b;
      both(gam, a, b);
      if (a != expected || b != expected) rep.tail_matches = false;
    }
  }
  rep.exact = rep.lhs == rep.rhs && rep.dual_method_agree && rep.boundary_vanishes && rep.tail_matches;
  return rep;
}

// ---------------------------------------------------------------------------

KirillovReport heisenberg_kirillov_check(const LatticeModel& L, const SchwartzFunction& phi, const Rational& t) {
  const RMatrix one = RMatrix::identity(L.space().dim());
  KirillovReport rep;
  const FixedPointReport base = verify_fixed_point_formula(L, one, phi);
  rep.trace = base.lhs;
  rep.orbital = base.orbital;
  rep.exact = base.exact;
  const int p = L.prime();
  const int n = phi.dim();
  // translation keeps the cell size; only the support grows
  const int M = std::max(phi.outer(), t.is_zero() ? phi.outer() : -valuation(t, p));
  const SchwartzFunction shifted = SchwartzFunction::from_function(
      p, n, M, phi.inner(),
      [&](const RVector& x) {
        RVector y = x;
        y[n - 1] -= t;
        return phi.evaluate(y);
      },
      phi.measure());
  rep.translated_trace = verify_fixed_point_formula(L, one, shifted).lhs;
  rep.central_value = L.chi(t);
  rep.central_ok = rep.translated_trace == rep.central_value * rep.trace;
  return rep;
}

}  // namespace padic
