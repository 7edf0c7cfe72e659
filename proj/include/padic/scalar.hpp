#pragma once

#include <climits>
#include <cstdint>
#include <string>

#include "padic/rational.hpp"

namespace padic {

// Element of Q_p stored as p^v · u with u a unit known modulo p^precision.
// Zero is a tagged sentinel; an *inexact* zero (cancellation below the known
// digits) remembers its absolute precision and refuses to report a valuation.
class PAdicScalar {
 public:
  static constexpr int kExact = INT_MAX;
  static constexpr int kInfiniteValuation = INT_MAX;
  static constexpr int kDefaultPrecision = 16;

  static int max_precision(int p);  // largest k with p^k < 2^62

  PAdicScalar() = default;
  PAdicScalar(int p, int valuation, int64_t unit, int precision);

  static PAdicScalar zero(int p, int absolute_precision = kExact);
  static PAdicScalar from_int(int p, int64_t n, int precision = kDefaultPrecision);
  static PAdicScalar from_rational(int p, const Rational& r, int precision = kDefaultPrecision);
  static PAdicScalar uniformizer(int p, int precision = kDefaultPrecision) {
    return from_int(p, p, precision);
  }

  int prime() const { return p_; }
  bool is_zero() const { return zero_; }
  bool is_exact_zero() const { return zero_ && abs_prec_ == kExact; }
  int valuation() const;  // kInfiniteValuation for exact zero
  int64_t unit() const { return u_; }
  int precision() const { return prec_; }
  int absolute_precision() const { return zero_ ? abs_prec_ : v_ + prec_; }

  PAdicScalar operator-() const;
  PAdicScalar operator+(const PAdicScalar& o) const;
  PAdicScalar operator-(const PAdicScalar& o) const { return *this + (-o); }
  PAdicScalar operator*(const PAdicScalar& o) const;
  PAdicScalar operator/(const PAdicScalar& o) const { return *this * o.inverse(); }
  PAdicScalar inverse() const;
  PAdicScalar with_precision(int precision) const;  // only ever lowers

  // Equality of the known digits (min of both absolute precisions).
  bool congruent(const PAdicScalar& o) const;

  Rational abs_p() const;  // q^{-v}, 0 for zero

  // d in [0, p^k) with x ≡ d·p^lo (mod p^(lo+k)); requires v(x) ≥ lo and
  // absolute precision ≥ lo + k.
  int64_t digits(int lo, int k) const;

  // Integer/p-power representative u·p^v (exact rational) of the known digits.
  Rational representative() const;

  std::string str() const;  // "p^v * u mod p^k"

 private:
  int p_ = 3;
  bool zero_ = true;
  int abs_prec_ = kExact;
  int v_ = 0;
  int64_t u_ = 0;
  int prec_ = 0;
};

// exp(x) = Σ x^n/n! for v(x) ≥ 1, to the precision carried by x.
PAdicScalar padic_exp(const PAdicScalar& x);

}  // namespace padic
