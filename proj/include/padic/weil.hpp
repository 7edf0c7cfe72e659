#pragma once

#include <string>
#include <vector>

#include "padic/cyclotomic.hpp"
#include "padic/errors.hpp"
#include "padic/linalg.hpp"
#include "padic/schwartz.hpp"

namespace padic {

// Q(v) = vᵀ·G·v over Q_p (G symmetric, non-degenerate), p odd.
class QuadraticForm {
 public:
  QuadraticForm(int p, RMatrix gram);
  static QuadraticForm diagonal(int p, const RVector& d);
  static QuadraticForm hyperbolic(int p);  // Q(x, y) = xy

  int prime() const { return p_; }
  std::size_t dim() const { return gram_.rows(); }
  const RMatrix& gram() const { return gram_; }
  Rational operator()(const RVector& v) const;
  Rational det() const { return gram_.det(); }

  QuadraticForm scaled(const Rational& a) const;
  QuadraticForm negated() const { return scaled(Rational(-1)); }
  QuadraticForm direct_sum(const QuadraticForm& o) const;
  std::string str() const;

 private:
  int p_;
  RMatrix gram_;
};

// B(v, w) = vᵀ·A·w with A antisymmetric.
class AlternatingForm {
 public:
  explicit AlternatingForm(RMatrix a);
  static AlternatingForm standard(std::size_t d);  // B(e_i, f_j) = δ_ij, basis (e_1..e_d, f_1..f_d)

  std::size_t dim() const { return a_.rows(); }
  const RMatrix& matrix() const { return a_; }
  Rational operator()(const RVector& v, const RVector& w) const;
  AlternatingForm restricted(const RMatrix& basis) const;  // Bᵀ-pullback to the column span

 private:
  RMatrix a_;
};

// Diagonal entries d_i and T ∈ GL_n(Z_(p)) with TᵀGT = diag(d).
struct JordanSplitting {
  RVector diag;
  RMatrix transform;
};
JordanSplitting jordan_splitting(const QuadraticForm& Q);

// ∫_{ϖ^{-N}𝒪ⁿ} ς(½·a₀·Q(w)) dw for the self-dual measure, exactly.  For N
// beyond the conductor of a₀Q this is the lattice Gauss sum
// Σ_{ϖ^{-N}𝒪ⁿ/ϖ^N𝒪ⁿ} ς(½a₀Q(w))·vol.
CyclotomicValue gauss_sum(const QuadraticForm& Q, const Rational& a0, int N);

struct WeilIndexResult {
  CyclotomicValue value;   // γ(a₀Q)
  int level = 0;           // first N with G_N = G_{N+1}
  CyclotomicValue c_Q;     // positive real, |G_N|
  Rational c_Q_squared;
  CyclotomicValue gauss;   // the stable value c_Q·γ
  std::vector<CyclotomicValue> partial;  // G_0 .. G_{level+1}
};

constexpr int kWeilMaxLevel = 6;

class NoStabilization : public std::runtime_error {
 public:
  NoStabilization(const std::string& what, std::vector<CyclotomicValue> partial)
      : std::runtime_error(what), partial_values(std::move(partial)) {}
  std::vector<CyclotomicValue> partial_values;
};

WeilIndexResult weil_index(const QuadraticForm& Q, const Rational& a0, int max_level = kWeilMaxLevel);

// ∫_V (φ * ς(½a₀Q))(v) dv, evaluated as ∫ ς(½a₀Q(v))·ĝ(−a₀Gv) dv with
// g = φ·ς(½a₀Q); the inner function is compactly supported.
struct TwistedConvolutionReport {
  CyclotomicValue lhs;
  CyclotomicValue rhs;          // c_Q·γ·∫φ
  CyclotomicValue phi_integral;
  double abs_error = 0;
  bool exact = false;
};
TwistedConvolutionReport twisted_convolution_check(const QuadraticForm& Q, const Rational& a0,
                                                   const SchwartzFunction& phi);

// Q_{s,ℓ₂}(v) = B(v, (s⁻¹−1)⁻¹v) on the column span of ell2, stored with the
// symmetrized Gram ½(A + Aᵀ).
QuadraticForm cayley_form(int p, const AlternatingForm& B, const RMatrix& s, const RMatrix& ell2);

// Pf(B) with Pf² = det; zero for singular B.
Rational pfaffian(const AlternatingForm& B);

// Smallest positive quadratic non-residue mod p.
int64_t non_square_unit(int p);

}  // namespace padic
