#pragma once

#include <string>
#include <vector>

#include "padic/character.hpp"
#include "padic/cyclotomic.hpp"
#include "padic/schwartz.hpp"
#include "padic/weil.hpp"

namespace padic {

// V = k^{2d} with symplectic basis (e_1..e_d, f_1..f_d), B(e_i, f_j) = δ_ij.
class SymplecticSpace {
 public:
  SymplecticSpace(int p, std::size_t d);
  int prime() const { return p_; }
  std::size_t half_dim() const { return d_; }
  std::size_t dim() const { return 2 * d_; }
  const AlternatingForm& form() const { return B_; }
  Rational B(const RVector& v, const RVector& w) const { return B_(v, w); }
  bool is_symplectic(const RMatrix& s) const;  // sᵀJs = J

 private:
  int p_;
  std::size_t d_;
  AlternatingForm B_;
};

// (v, t)(v', t') = (v + v', t + t' + ½B(v, v')); exp(v + tE) = (v, t).
struct HeisenbergElement {
  RVector v;
  Rational t;
};
HeisenbergElement multiply(const SymplecticSpace& V, const HeisenbergElement& a, const HeisenbergElement& b);
HeisenbergElement inverse(const HeisenbergElement& a);

// r = ⊕ ϖ^{ε_i} 𝒪 in the symplectic coordinates, self-dual for ς(a₀B):
// ε(e_i) + ε(f_i) = −v(a₀).  The split is ε(e) = ⌊−v(a₀)/2⌋; r = r^⊥ is
// checked directly.
class SelfDualLattice {
 public:
  SelfDualLattice(const SymplecticSpace& V, const Rational& a0);
  const std::vector<int>& exponents() const { return eps_; }
  const Rational& a0() const { return a0_; }
  Lattice lattice() const;
  bool verify_self_dual() const;  // r = r^⊥ for ς(a₀B)
  bool stabilizes(const RMatrix& x) const;  // x·r = r
  std::string str() const;

 private:
  int p_;
  std::size_t d_;
  Rational a0_;
  std::vector<int> eps_;
  RMatrix J_;
};

// Finite matrix acting on functions on V covariant under r:
// φ(v + u) = ς_{a₀}(½B(v, u))·φ(v) for u ∈ r, represented by their values at
// the canonical representatives of the window ϖ^{-N}r / r.  (Aφ)(u_i) =
// Σ_j A(i, j)·φ(u_j).
class LatticeOperator {
 public:
  LatticeOperator() = default;
  explicit LatticeOperator(std::size_t n) : n_(n), a_(n * n) {}
  static LatticeOperator identity(std::size_t n);

  std::size_t size() const { return n_; }
  CyclotomicValue& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const CyclotomicValue& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  LatticeOperator operator*(const LatticeOperator& o) const;
  LatticeOperator operator+(const LatticeOperator& o) const;
  LatticeOperator scaled(const CyclotomicValue& c) const;
  LatticeOperator adjoint() const;
  std::vector<CyclotomicValue> apply(const std::vector<CyclotomicValue>& x) const;
  CyclotomicValue trace() const;
  bool is_zero() const;
  bool operator==(const LatticeOperator& o) const { return n_ == o.n_ && a_ == o.a_; }

 private:
  std::size_t n_ = 0;
  std::vector<CyclotomicValue> a_;
};

struct WindowedVector {
  int N = 0;
  std::vector<CyclotomicValue> values;
};

class LatticeModel {
 public:
  LatticeModel(int p, std::size_t d, const Rational& a0);

  int prime() const { return V_.prime(); }
  const SymplecticSpace& space() const { return V_; }
  const SelfDualLattice& lattice() const { return r_; }
  const Rational& a0() const { return a0_; }
  CyclotomicValue chi(const Rational& t) const { return char_(a0_ * t); }  // ς_{a₀}

  std::size_t window_size(int N) const;
  RVector representative(int N, std::size_t idx) const;
  // v = u_idx + ρ with ρ ∈ r; throws DomainError when v ∉ ϖ^{-N}r
  std::size_t locate(int N, const RVector& v, RVector& rho) const;
  int level_of(const RVector& v) const;  // smallest N ≥ 0 with v ∈ ϖ^{-N}r
  WindowedVector embed(const WindowedVector& x, int N) const;

  LatticeOperator pi_matrix(const HeisenbergElement& h, int N) const;  // needs h.v ∈ ϖ^{-N}r
  LatticeOperator sigma_matrix(const RMatrix& x, int N) const;         // x ∈ Sp(V), x·r = r
  LatticeOperator density_matrix(const SchwartzFunction& g, int N) const;

  // Kernel of π(g) = ∫_V g(w)π(w, 0)dw at an arbitrary pair (u', u):
  // (π(g)δ_u)(u') = ∫_r g(u'−u−m)·ς_{a₀}(½B(u',u) + ½B(u'+u, m)) dm.
  CyclotomicValue kernel(const SchwartzFunction& g, const RVector& up, const RVector& u) const;

 private:
  SymplecticSpace V_;
  Rational a0_;
  SelfDualLattice r_;
  AdditiveCharacter char_;
};

// (π(h)φ)(v) = ς_{a₀}(t − ½B(v, w))·φ(v − w), growing the window as needed.
WindowedVector pi_R_apply(const LatticeModel& L, const HeisenbergElement& h, const WindowedVector& phi);
// (σ(x)φ)(v) = φ(x⁻¹v)
WindowedVector sigma_R_apply(const LatticeModel& L, const RMatrix& x, const WindowedVector& phi);

// g(w) = ∫ α(w, t)·ς_{a₀}(t) dt for α on H-coordinates (v, t) with d_H = dv dt;
// π(α) = π(g) as operators.
SchwartzFunction reduce_density(const LatticeModel& L, const SchwartzFunction& alpha);

// Tr(σ(s)·π(g)) as Σ_c (π(g)δ_c)(s⁻¹u_c) over the cosets where the kernel
// diagonal can be nonzero.  s must be 1 or without fixed points.
struct TraceReport {
  CyclotomicValue diagonal_sum;  // Σ_c kernel(s⁻¹u_c, u_c)
  int window = 0;                // N of the window ϖ^{-N}r/r used
  bool matrix_checked = false;
  CyclotomicValue matrix_trace;  // Tr of σ-matrix × π(g)-matrix, when computed
};
int trace_window(const LatticeModel& L, const RMatrix& s, const SchwartzFunction& g);
TraceReport trace_sigma_pi(const LatticeModel& L, const RMatrix& s, const SchwartzFunction& g,
                           bool with_matrix = false);

// g(w) = c·α(Tw)·ς(½a₀·(Tw)ᵀG(Tw)) as an exact SchwartzFunction on V.
SchwartzFunction transported_density(const LatticeModel& L, const SchwartzFunction& alpha, const RMatrix& T,
                                     const RMatrix& G, const Rational& c);

struct MetaplecticCharacterValue {
  CyclotomicValue value;
  std::string decomposition;   // which lagrangians were used
  bool has_gamma = false;      // W₂ ≠ 0
  CyclotomicValue gamma;       // γ_{a₀}(Q_{s,ℓ₂}) when has_gamma
  int lift_sign = 1;
};
// Φ_{a₀}(s̃) for the lift with sign `lift_sign` relative to σ_R.  The
// decomposition search tries coordinate lagrangians (e/f choices per pair) as
// ℓ₁ (s-stable) first, then as ℓ₂ (s·ℓ₂ ∩ ℓ₂ = 0), then the lines e + λf.
// Supported: V(s) = V or V(s) = 0.
MetaplecticCharacterValue phi_a0(const LatticeModel& L, const RMatrix& s, int lift_sign);
// Every decomposition found, for recomputation checks.
std::vector<MetaplecticCharacterValue> phi_a0_all(const LatticeModel& L, const RMatrix& s, int lift_sign);

// |det(1−s)|_p^{-1/2} on (1−s)V; 1 for s = 1.
CyclotomicValue det_factor(const LatticeModel& L, const RMatrix& s);

struct FixedPointReport {
  std::string instance;
  CyclotomicValue lhs, rhs;
  CyclotomicValue phi;
  CyclotomicValue orbital;  // ∫ over the fixed orbit
  int window = 0;
  double abs_error = 0;
  bool exact = false;
  std::string character;
  std::string liouville;
};
// s = 1: β on H-coordinates (dim 2d+1), LHS = Tr π(β), RHS = ∫_{E*+V*} β̂ dμ_L.
// V(s) = 0: β on H(s) = kE, LHS = Tr(σ(s)π(ψ)) for the descent ψ of
// 1_{𝒪^{2d+1}} ⊗ β, RHS = Φ·|det(1−s)|^{-1/2}·β̂(a₀).
FixedPointReport verify_fixed_point_formula(const LatticeModel& L, const RMatrix& s, const SchwartzFunction& beta,
                                            int lift_sign = 1);

// Tr J_α(z) for z without fixed points, ∫α = 1, against Φ(z)|det(1−z)|^{-1/2}.
struct YacaReport {
  CyclotomicValue trace, predicted;
  MetaplecticCharacterValue phi;
  bool exact = false;
  double abs_error = 0;
};
YacaReport yaca_check(const LatticeModel& L, const RMatrix& z, const SchwartzFunction& alpha, int lift_sign = 1);

}  // namespace padic
