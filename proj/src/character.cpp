#include "padic/character.hpp"

#include "padic/errors.hpp"

namespace padic {

AdditiveCharacter::AdditiveCharacter(int p) : p_(p) {
  (void)PAdicScalar::zero(p);  // validates the prime
}

int conductor_exponent(const Rational& x, int p) {
  if (x.is_zero()) return 0;
  int v = valuation(x, p);
  return v >= 0 ? 0 : -v;
}

int64_t AdditiveCharacter::phase(const Rational& x, int K) const {
  if (x.is_zero() || K == 0) {
    if (conductor_exponent(x, p_) > K) throw DomainError("phase: level too small for argument");
    return 0;
  }
  return residue_digits(x, p_, -K, K);
}

int64_t AdditiveCharacter::phase(const PAdicScalar& x, int K) const {
  if (x.is_zero()) {
    if (x.absolute_precision() < 0) throw PrecisionExhausted("fractional digits of argument not determined");
    return 0;
  }
  if (x.valuation() < -K) throw DomainError("phase: level too small for argument");
  if (x.absolute_precision() < 0) throw PrecisionExhausted("fractional digits of argument not determined");
  if (x.valuation() >= 0) return 0;
  return x.digits(-K, K);
}

CyclotomicValue AdditiveCharacter::operator()(const Rational& x) const {
  int K = conductor_exponent(x, p_);
  return CyclotomicValue::root_of_unity(p_, K, phase(x, K));
}

CyclotomicValue AdditiveCharacter::operator()(const PAdicScalar& x) const {
  if (x.prime() != p_) throw DomainError("character prime mismatch");
  if (x.is_zero() || x.valuation() >= 0) {
    if (x.absolute_precision() < 0) throw PrecisionExhausted("fractional digits of argument not determined");
    return CyclotomicValue(1);
  }
  int K = -x.valuation();
  return CyclotomicValue::root_of_unity(p_, K, phase(x, K));
}

std::string AdditiveCharacter::description() {
  return "varsigma(x) = exp(2*pi*i*{x}_p), {x}_p the p-fractional part; trivial exactly on O";
}

Rational abs_p(const Rational& x, int p) {
  if (x.is_zero()) return Rational(0);
  int v = valuation(x, p);
  return v >= 0 ? Rational(1, ipow(p, v)) : Rational(ipow(p, -v));
}

Lattice::Lattice(int p, RMatrix basis) : p_(p), basis_(std::move(basis)) {
  if (basis_.rows() != basis_.cols()) throw DomainError("lattice basis must be square");
  if (basis_.rows() > 0 && basis_.det().is_zero()) throw DomainError("lattice basis is not full rank");
  inverse_ = basis_.rows() ? basis_.inverse() : basis_;
}

Lattice Lattice::standard(int p, std::size_t n, int scale) {
  Rational s = scale >= 0 ? Rational(ipow(p, scale)) : Rational(1, ipow(p, -scale));
  return Lattice(p, RMatrix::identity(n).scaled(s));
}

bool Lattice::contains(const RVector& v) const { return is_p_integral(inverse_ * v, p_); }

bool Lattice::contains(const Lattice& other) const { return is_p_integral(inverse_ * other.basis_, p_); }

Rational Lattice::volume() const { return basis_.rows() ? abs_p(basis_.det(), p_) : Rational(1); }

Lattice Lattice::scaled(int k) const {
  Rational s = k >= 0 ? Rational(ipow(p_, k)) : Rational(1, ipow(p_, -k));
  return Lattice(p_, basis_.scaled(s));
}

Lattice Lattice::dual(const RMatrix& gram) const {
  // w ∈ L^⊥ ⇔ basisᵀ G w ∈ 𝒪ⁿ ⇔ w ∈ (basisᵀG)^{-1} 𝒪ⁿ
  return Lattice(p_, (basis_.transpose() * gram).inverse());
}

Rational coset_measure(const Lattice& L, const RVector& shift) {
  if (shift.size() != L.dimension()) throw DomainError("shift dimension mismatch");
  return L.volume();
}

}  // namespace padic
