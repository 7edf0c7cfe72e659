#pragma once

#include <string>

#include "padic/cyclotomic.hpp"
#include "padic/linalg.hpp"
#include "padic/scalar.hpp"

namespace padic {

// ς(x) = exp(2πi·{x}_p), {x}_p the p-fractional part.  Trivial exactly on 𝒪,
// so 𝒪ⁿ is self-dual for the dot-product pairing.
class AdditiveCharacter {
 public:
  explicit AdditiveCharacter(int p);

  int prime() const { return p_; }
  CyclotomicValue operator()(const PAdicScalar& x) const;
  CyclotomicValue operator()(const Rational& x) const;
  // e with ς(x) = ζ_{p^K}^e; needs v(x) ≥ −K.
  int64_t phase(const Rational& x, int K) const;
  int64_t phase(const PAdicScalar& x, int K) const;
  static std::string description();

 private:
  int p_;
};

// Smallest K with x ∈ p^{-K}𝒪 (0 for x ∈ 𝒪).
int conductor_exponent(const Rational& x, int p);

// Full-rank 𝒪-lattice in Q_pⁿ spanned by the columns of `basis`.
class Lattice {
 public:
  Lattice(int p, RMatrix basis);
  static Lattice standard(int p, std::size_t n, int scale = 0);  // ϖ^scale 𝒪ⁿ

  int prime() const { return p_; }
  std::size_t dimension() const { return basis_.rows(); }
  const RMatrix& basis() const { return basis_; }

  bool contains(const RVector& v) const;
  bool contains(const Lattice& other) const;  // other ⊆ this
  Rational volume() const;                    // dμ(𝒪)=1 per coordinate
  Lattice scaled(int k) const;                // ϖ^k L
  // L^⊥ = {w : ς(wᵀ G v) = 1 ∀v∈L} for the pairing with Gram matrix G.
  Lattice dual(const RMatrix& gram) const;
  bool operator==(const Lattice& o) const { return contains(o) && o.contains(*this); }

 private:
  int p_;
  RMatrix basis_;
  RMatrix inverse_;
};

// μ(shift + L) = |det basis|_p, independent of the shift.
Rational coset_measure(const Lattice& L, const RVector& shift);

// |x|_p for rationals
Rational abs_p(const Rational& x, int p);

}  // namespace padic
