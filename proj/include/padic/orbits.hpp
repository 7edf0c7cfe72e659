#pragma once

#include <string>
#include <vector>

#include "padic/cyclotomic.hpp"
#include "padic/linalg.hpp"
#include "padic/schwartz.hpp"

namespace padic {

// Lie algebra over k given by structure constants [E_i, E_j] = Σ_k c_ij^k E_k.
// Antisymmetry and the Jacobi identity are checked exactly on construction.
class LieAlgebra {
 public:
  // brackets[i][j] = coordinates of [E_i, E_j]; entries below the diagonal
  // may be left empty and are filled by antisymmetry.
  LieAlgebra(std::vector<std::string> names, std::vector<std::vector<RVector>> brackets,
             std::vector<std::size_t> unipotent = {});

  // [E1, E2] = E2, [E1, E3] = −E3, [E2, E3] = 0; U spanned by E2, E3.
  static LieAlgebra gamma_example();
  // [X, Y] = Z.
  static LieAlgebra heisenberg3();

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::size_t>& unipotent_radical() const { return unipotent_; }
  RVector bracket(const RVector& X, const RVector& Y) const;
  RMatrix ad(const RVector& X) const;    // columns ad_X(E_j)
  RMatrix beta(const RVector& g) const;  // β_g(E_i, E_j) = <g, [E_i, E_j]>
  bool is_solvable() const;
  bool satisfies_jacobi() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<RVector>> c_;
  std::vector<std::size_t> unipotent_;
};

// Basis of 𝔤(g) = ker β_g.
std::vector<RVector> stabilizer_algebra(const LieAlgebra& L, const RVector& g);

struct RegularityReport {
  std::size_t stabilizer_dim = 0;
  std::size_t min_stabilizer_dim = 0;  // generic value
  bool regular = false;
  std::vector<RVector> stabilizer;
  std::vector<RVector> cartan_duflo;  // 𝔧_g, empty unless regular
  std::size_t max_cartan_dim = 0;
  Rational pfaffian;                  // π_B(g) on [𝔧, 𝔤]; 1 when [𝔧, 𝔤] = 0
  bool pfaffian_criterion = false;    // g regular in 𝔥* and π_B(g) ≠ 0
  bool strongly_regular = false;
};
// The reductive part of the (commutative) stabilizer is taken as the
// complement of the radical of the trace form tr(ad_X ad_Y); this is exact
// for split tori, which covers the shipped presets.  Generic dimensions are
// maxima over a fixed deterministic sample of forms.
RegularityReport regularity_report(const LieAlgebra& L, const RVector& g);

// (a, x, y)_G = [[a, 0, x], [0, a⁻¹, y], [0, 0, 1]].
struct GammaGroupElement {
  Rational a{1}, x, y;
  GammaGroupElement operator*(const GammaGroupElement& o) const;
  GammaGroupElement inverse() const;
  RMatrix matrix() const;
  bool operator==(const GammaGroupElement&) const = default;
};
RMatrix adjoint_matrix(const GammaGroupElement& g);  // Ad(g) on (E1, E2, E3)

// Left action (g·f)(X) = f(Ad(g)⁻¹X) on forms f = αE1* + βE2* + γE3*.
// g·f_{α,β,γ} = f_{α + βx/a − γay, β/a, γa}; in particular
// g⁻¹·f_{α,β,γ} = f_{α − βx + γy, βa, γa⁻¹}.
RVector coadjoint_action(const GammaGroupElement& g, const RVector& f);
RMatrix coadjoint_matrix(const GammaGroupElement& g);

// Ω_G = {f_{α,β,γ} : β, γ ≠ 0}: strongly regular with a closed orbit.
bool in_omega_G(const RVector& f);
// Closedness of G·f, decided from the limits of (ϖ^{±n}, 0, 0)·f.
bool orbit_closed(const RVector& f);

// ---- orbit charts and integrals --------------------------------------------

// d^×b = dμ(b)/|b| on k^×; the cosets b(1 + ϖ^k𝒪), k ≥ 1, have mass p^{-k}.
std::vector<Rational> unit_coset_representatives(int p, int v, int k);

// Closed coadjoint orbits of the example group.
struct OrbitChart {
  enum class Kind { Point, Gamma, Unipotent };
  Kind kind = Kind::Point;
  Rational alpha;  // Point: f_{α,0,0}
  Rational gamma;  // Gamma: 𝒪_{0,1,γ} ⊂ 𝔤*, Unipotent: 𝒪_{(1,γ)} ⊂ 𝔲*
  static OrbitChart point(const Rational& alpha);
  static OrbitChart gamma_orbit(const Rational& gamma);
  static OrbitChart unipotent_orbit(const Rational& gamma);
  // 𝒪_{0,1,γ} ∋ (α, a, γ/a) with dα·dμ(a)/|a|; 𝒪_{(1,γ)} ∋ (a, γ/a) with dμ(a)/|a|.
  RVector point_at(const Rational& alpha, const Rational& a) const;
  std::string str() const;
};

CyclotomicValue orbital_integral(const OrbitChart& chart, const SchwartzFunction& F);

// H(F, γ) = ∫_{k^×} F(a, γ/a) dμ(a)/|a| for F on k².
CyclotomicValue hyperbola_integral(const SchwartzFunction& F, const Rational& gamma);
// v(γ) < floor ⇒ H(F, γ) = 0;  v(γ) ≥ start ⇒ H(F, γ) = constant + slope·v(γ).
struct HyperbolaTail {
  int floor = 0;
  int start = 0;
  CyclotomicValue constant, slope;
};
HyperbolaTail hyperbola_tail(const SchwartzFunction& F);
// ∫_{v(γ) ≥ start} (constant + slope·v(γ)) dμ(γ)
CyclotomicValue tail_integral(int p, int start, const CyclotomicValue& constant, const CyclotomicValue& slope);
// Unit level k such that γ ↦ H(F, γ) is constant on γ(1 + ϖ^k𝒪).
int hyperbola_gamma_level(const SchwartzFunction& F);

// ∫_{𝔲*} F = ∫_{k^×} ∫_{𝒪_{(1,γ)}} F dμ dμ(γ), both sides as finite sums.
struct DisintegrationReport {
  CyclotomicValue lhs, rhs;
  std::vector<std::pair<int, CyclotomicValue>> shells;  // explicit γ-shells
  int tail_start = 0;
  CyclotomicValue tail;
  bool boundary_vanishes = false;  // H = 0 on the shell below the window
  bool tail_matches = false;       // affine law checked directly at two shells
  bool exact = false;
};
DisintegrationReport measure_disintegration_check(const SchwartzFunction& F);

// Orbit 𝒪 = G·f_{0,1,γ}, H = G(u_{(1,γ)}) = U, G/H ≅ {(a,0,0)}, 𝔥^⊥ = kE1*:
// ∫_𝒪 F dμ_𝒪 = ∫_{G/H} ∫_{𝔥^⊥} F(x·(f_{0,1,γ} + t)) dt d(xH).
struct FiberedReport {
  CyclotomicValue chart_side, fibered_side;
  bool exact = false;
};
FiberedReport fibered_orbit_integral_check(const SchwartzFunction& F, const Rational& gamma);

}  // namespace padic
