#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "padic/rational.hpp"

namespace padic {

// Exact element of Q(ζ_N), N = 8·p^K.
//
// Canonical basis: ζ_8^a · ζ_{p^K}^j with a ∈ [0,4), j ∈ [0, φ(p^K)); i.e. the
// tensor product of the power bases of Q(ζ_8) and Q(ζ_{p^K}).  Values are kept
// as int64 numerators over one positive denominator, gcd-reduced, and with
// the smallest K that represents them, so == is structural.  Values with
// different K combine after lifting (j ↦ j·p^ΔK keeps the basis).
class CyclotomicValue {
 public:
  CyclotomicValue() = default;
  CyclotomicValue(const Rational& r);  // NOLINT: rationals embed
  CyclotomicValue(int64_t n) : CyclotomicValue(Rational(n)) {}  // NOLINT

  // c · ζ_8^a · ζ_{p^K}^j for arbitrary integers a, j.
  static CyclotomicValue monomial(int p, int K, int64_t a, int64_t j, const Rational& c = Rational(1));
  static CyclotomicValue root_of_unity(int p, int K, int64_t j) { return monomial(p, K, 0, j); }
  static CyclotomicValue zeta8(int64_t a) { return monomial(0, 0, a, 0); }
  static CyclotomicValue imag_unit() { return zeta8(2); }
  // Positive square root of r > 0 when it lies in Q(ζ_{8p^∞}): r = p^e 2^f s² only.
  static CyclotomicValue sqrt_rational(int p, const Rational& r);
  // From coefficients on ζ_N^t, N = 8 p^K.
  static CyclotomicValue from_residues(int p, int K, const std::vector<std::pair<int64_t, Rational>>& terms);

  int prime() const { return p_; }
  int level() const { return K_; }
  int64_t conductor() const;
  int64_t phi() const { return phi_; }
  const std::vector<int64_t>& numerators() const { return num_; }
  int64_t denominator() const { return den_; }
  Rational coefficient(int a, int64_t j) const;
  // Nonzero terms as (residue t mod N, coefficient of ζ_N^t) in canonical basis.
  std::vector<std::pair<int64_t, Rational>> residue_terms() const;

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_value() const;  // throws unless is_rational()

  CyclotomicValue operator-() const;
  CyclotomicValue& operator+=(const CyclotomicValue& o);
  CyclotomicValue& operator-=(const CyclotomicValue& o);
  CyclotomicValue& operator*=(const CyclotomicValue& o);
  friend CyclotomicValue operator+(CyclotomicValue a, const CyclotomicValue& b) { return a += b; }
  friend CyclotomicValue operator-(CyclotomicValue a, const CyclotomicValue& b) { return a -= b; }
  friend CyclotomicValue operator*(const CyclotomicValue& a, const CyclotomicValue& b);
  friend bool operator==(const CyclotomicValue& a, const CyclotomicValue& b);
  friend bool operator!=(const CyclotomicValue& a, const CyclotomicValue& b) { return !(a == b); }

  CyclotomicValue scaled(const Rational& r) const;
  CyclotomicValue conj() const;
  // Multiply by ζ_8^a ζ_{p^K}^j (exact rotation, no multiplication).
  CyclotomicValue rotated(int p, int K, int64_t a, int64_t j) const;

  std::complex<double> to_complex() const;
  double abs() const { return std::abs(to_complex()); }
  std::string str() const;

 private:
  friend class PhaseAccumulator;
  void set_shape(int p, int K);
  void normalize();  // gcd-reduce and lower K when possible

  int p_ = 0;  // 0 while K == 0 (rational ⊗ Q(ζ_8))
  int K_ = 0;
  int64_t phi_ = 1;
  std::vector<int64_t> num_ = std::vector<int64_t>(4, 0);  // index a·φ + j
  int64_t den_ = 1;
};

// Group-ring accumulator over Z[Z/8 × Z/p^K] with a common denominator.  Adds
// are dense int64 (SIMD kernels); before a bound could reach 2^62 the
// accumulated part is flushed into an exact partial sum.
class PhaseAccumulator {
 public:
  PhaseAccumulator(int p, int K);

  void add_monomial(int64_t a, int64_t j, const Rational& c);
  // += v · ζ_8^a ζ_{p^K}^j · w
  void add(const CyclotomicValue& v, int64_t a = 0, int64_t j = 0, int64_t w = 1);
  void add_product(const CyclotomicValue& x, const CyclotomicValue& y);

  // A value pre-lifted to this accumulator's level, for hot loops that add
  // the same value many times under different rotations.
  struct Prepared {
    std::vector<int64_t> num;  // 4·φ numerators at the accumulator level
    int64_t den = 1;
    int64_t bound = 0;
    bool live[4] = {false, false, false, false};
    bool zero() const { return bound == 0; }
  };
  Prepared prepare(const CyclotomicValue& v) const;
  void add(const Prepared& v, int64_t a, int64_t j, int64_t w = 1);
  void add_product(const CyclotomicValue& x, const Prepared& y);
  CyclotomicValue result() const;
  void clear();
  int level() const { return K_; }

 private:
  void flush();
  void ensure_room(int64_t extra);
  void rescale_to(int64_t den);
  const int64_t* lift(const CyclotomicValue& v, std::vector<int64_t>& scratch) const;

  int p_, K_;
  int64_t P_, phi_;
  std::vector<int64_t> acc_;  // 8 rows of length P_
  int64_t den_ = 1;
  int64_t bound_ = 0;
  CyclotomicValue partial_;
};

}  // namespace padic
