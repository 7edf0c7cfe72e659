#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "padic/heisenberg.hpp"
#include "padic/orbits.hpp"
#include "padic/schwartz.hpp"

namespace padic {

// Test functions on G are SchwartzFunctions on k³ in the coordinates
// (a, x, y) that vanish on the cell of a = 0; the Haar measure is
// |a|⁻¹dμ(a)dμ(x)dμ(y).
void require_group_function(const SchwartzFunction& phi);

// ψ on k^×, constant on the cosets b(1 + ϖ^k𝒪), finitely supported.
class UnitGroupFunction {
 public:
  UnitGroupFunction(int p, int level);
  int prime() const { return p_; }
  int level() const { return k_; }
  void set(const Rational& b, const CyclotomicValue& v);
  CyclotomicValue evaluate(const Rational& b) const;
  UnitGroupFunction refined(int level) const;
  // (representative, value) for every nonzero coset
  std::vector<std::pair<Rational, CyclotomicValue>> entries() const;
  friend bool operator==(const UnitGroupFunction& a, const UnitGroupFunction& b);

 private:
  std::pair<int, int64_t> key(const Rational& b) const;
  int p_, k_;
  std::map<std::pair<int, int64_t>, CyclotomicValue> values_;
};

// (π_γ(a, x, y)ψ)(b) = ς(b⁻¹x + bγy)·ψ(a⁻¹b); the level grows as needed.
UnitGroupFunction pi_gamma_apply(const Rational& gamma, const GammaGroupElement& g, const UnitGroupFunction& psi);

// Entries of π_γ(φ d_G) on indicator functions of unit cosets, by direct
// integration over G: (π_γ(φ)1_C)(b) = ∫_{a ∈ bC⁻¹} ∫∫ φ(a,x,y) ς(b⁻¹x + bγy) dx dy d^×a.
class KernelEvaluator {
 public:
  explicit KernelEvaluator(const SchwartzFunction& phi);
  const SchwartzFunction& function() const { return phi_; }
  // C = c(1 + ϖ^k𝒪)
  CyclotomicValue entry(const Rational& gamma, const Rational& b, const Rational& c, int k) const;

 private:
  CyclotomicValue fiber_sum(const Rational& a, const Rational& xi, const Rational& eta) const;
  SchwartzFunction phi_;
  int K_;
  std::vector<PhaseAccumulator::Prepared> prepared_;
  mutable PhaseAccumulator acc_;
};

// Invariant window of cosets carrying the trace of π_γ(φ): valuations
// [vlo, vhi] and unit level k.
struct ThetaWindow {
  int vlo = 0, vhi = 0, level = 1;
  std::size_t cosets = 0;
};
ThetaWindow theta_window(const Rational& gamma, const SchwartzFunction& phi);

LatticeOperator kernel_matrix(const KernelEvaluator& K, const Rational& gamma, const std::vector<Rational>& reps, int k);
std::vector<Rational> window_representatives(int p, const ThetaWindow& w);

// Θ_γ(φ) two ways: the kernel-matrix trace on the invariant window, and the
// diagonal integral ∫_{k^×} F(b⁻¹, γb) dμ(b)/|b| with F(ξ, η) the Fourier
// transform of φ(1, ·, ·).
CyclotomicValue theta_kernel_trace(const KernelEvaluator& K, const Rational& gamma, ThetaWindow* used = nullptr);
SchwartzFunction unipotent_slice_transform(const SchwartzFunction& phi);
CyclotomicValue theta_closed_form(const SchwartzFunction& slice_transform, const Rational& gamma);

struct CharacterReport {
  Rational gamma;
  CyclotomicValue kernel_trace, closed_form;
  ThetaWindow window;
  bool agree = false;
};
CharacterReport theta_gamma(const Rational& gamma, const SchwartzFunction& phi);

// ---- the exponential chart ---------------------------------------------------

// Integer r ∈ [0, p^N) with Σ X^n/n! ≡ r (mod p^N); with `shifted`, the
// series Σ X^n/(n+1)! = (e^X − 1)/X instead.  Needs v(X) ≥ 1.
int64_t exp_series_residue(const Rational& X, int p, int N, bool shifted = false);
// Largest j ≤ m with supp φ ⊆ (1 + ϖ^j𝒪) × k²; 0 when the support leaves 1 + ϖ𝒪.
int identity_support_exponent(const SchwartzFunction& phi);
// (φ∘exp)(X, Y, Z) with exp(X, Y, Z)_𝔤 = (e^X, Y(e^X−1)/X, Z(1−e^{−X})/X)_G.
// Throws DomainError unless supp φ ⊆ exp(ϖ𝒪 × k²).
SchwartzFunction exp_pullback(const SchwartzFunction& phi);

struct CharacterFormulaReport {
  Rational gamma;
  CyclotomicValue kernel_trace, closed_form, orbital;
  int epsilon = 0;  // supp φ ⊆ (1 + ϖ^ε𝒪) × k²
  bool exact = false;
  bool dual_method_agree = false;
};
// Θ_γ(φ) = ∫_{𝒪_{0,1,γ}} (φ∘exp)^ dμ.
CharacterFormulaReport character_formula_check_s1(const Rational& gamma, const SchwartzFunction& phi);
// Same for several γ, sharing the transforms.
std::vector<CharacterFormulaReport> character_formula_check_s1(const std::vector<Rational>& gammas,
                                                               const SchwartzFunction& phi);

// Conjugation-saturated tube around s = (a_s, 0, 0) truncated to the window
// (M, m): {(a, x, y) : a ∈ a_s(1 + ϖ^j𝒪), x, y ∈ ϖ^{-M}𝒪}.
bool in_tube(const Rational& a_s, int j, int p, const Rational& a);

struct VanishingReport {
  Rational gamma, a_s;
  CyclotomicValue kernel_trace, closed_form;
  int epsilon = 0;
  bool tube_separated = false;  // the tube does not meet U
  bool exact_zero = false;
};
VanishingReport character_vanishing_check(const Rational& gamma, const Rational& a_s, int j, const SchwartzFunction& phi);

struct PlancherelShell {
  int valuation = 0;
  CyclotomicValue kernel, closed;
};
struct PlancherelReport {
  CyclotomicValue lhs, rhs;
  std::vector<PlancherelShell> shells;
  int floor = 0, tail_start = 0, gamma_level = 1;
  CyclotomicValue tail;
  bool boundary_vanishes = false;
  bool tail_matches = false;
  bool dual_method_agree = false;
  bool exact = false;
};
// φ((1,0,0)_G) = ∫_{k^×} Θ_γ(φ d_G) dμ(γ).  Θ_γ vanishes for v(γ) < floor
// and is affine in v(γ) from tail_start on; the tail is summed in closed form
// and the affine law is checked at two shells by both methods.
PlancherelReport plancherel_verify(const SchwartzFunction& phi);

struct KirillovReport {
  CyclotomicValue trace, orbital;
  CyclotomicValue translated_trace, central_value;
  bool exact = false;
  bool central_ok = false;
};
// Lattice-model trace of π(φ d_H) against the orbit E*_{a₀} + V*, plus the
// central translate φ(·, · − t).
KirillovReport heisenberg_kirillov_check(const LatticeModel& L, const SchwartzFunction& phi, const Rational& t);

}  // namespace padic
