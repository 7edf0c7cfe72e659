#include "padic/scalar.hpp"

#include <algorithm>

#include "padic/errors.hpp"

namespace padic {

namespace {

void check_prime(int p) {
  if (p < 3 || p % 2 == 0) throw DomainError("prime must be an odd prime");
  for (int d = 3; d * d <= p; d += 2)
    if (p % d == 0) throw DomainError("prime must be an odd prime");
}

}  // namespace

int PAdicScalar::max_precision(int p) {
  int k = 0;
  __int128 acc = 1;
  while (acc * p < (static_cast<__int128>(1) << 62)) {
    acc *= p;
    ++k;
  }
  return k;
}

PAdicScalar::PAdicScalar(int p, int valuation, int64_t unit, int precision)
    : p_(p), zero_(false), abs_prec_(kExact), v_(valuation), prec_(precision) {
  check_prime(p);
  if (precision <= 0 || precision > max_precision(p)) throw DomainError("precision out of range");
  int64_t mod = ipow(p, precision);
  u_ = mod_floor(unit, mod);
  if (u_ % p == 0) throw DomainError("unit part divisible by p");
}

PAdicScalar PAdicScalar::zero(int p, int absolute_precision) {
  check_prime(p);
  PAdicScalar z;
  z.p_ = p;
  z.abs_prec_ = absolute_precision;
  return z;
}

PAdicScalar PAdicScalar::from_int(int p, int64_t n, int precision) {
  return from_rational(p, Rational(n), precision);
}

PAdicScalar PAdicScalar::from_rational(int p, const Rational& r, int precision) {
  check_prime(p);
  if (r.is_zero()) return zero(p);
  int v = padic::valuation(r, p);
  precision = std::min(precision, max_precision(p));
  // unit = (num/p^a)·(den/p^b)^{-1} mod p^precision
  int64_t mod = ipow(p, precision);
  int64_t n = r.num(), d = r.den();
  while (n % p == 0) n /= p;
  while (d % p == 0) d /= p;
  int64_t u = mulmod(mod_floor(n, mod), invmod(d, mod), mod);
  return PAdicScalar(p, v, u, precision);
}

int PAdicScalar::valuation() const {
  if (zero_) {
    if (abs_prec_ == kExact) return kInfiniteValuation;
    throw PrecisionExhausted("valuation of a value indistinguishable from 0 at absolute precision " +
                             std::to_string(abs_prec_));
  }
  return v_;
}

PAdicScalar PAdicScalar::operator-() const {
  if (zero_) return *this;
  PAdicScalar r = *this;
  r.u_ = mod_floor(-u_, ipow(p_, prec_));
  return r;
}

PAdicScalar PAdicScalar::operator+(const PAdicScalar& o) const {
  if (p_ != o.p_) throw DomainError("mixed primes");
  if (zero_ && o.zero_) return zero(p_, std::min(abs_prec_, o.abs_prec_));
  if (zero_) return abs_prec_ == kExact ? o : o.with_precision(std::max(1, abs_prec_ - o.v_));
  if (o.zero_) return o.abs_prec_ == kExact ? *this : with_precision(std::max(1, o.abs_prec_ - v_));
  int a = std::min(absolute_precision(), o.absolute_precision());
  int vmin = std::min(v_, o.v_);
  int width = a - vmin;
  if (width <= 0) return zero(p_, a);
  int64_t mod = ipow(p_, width);
  int64_t x = mulmod(u_ % mod, ipow(p_, v_ - vmin) % mod, mod);
  int64_t y = mulmod(o.u_ % mod, ipow(p_, o.v_ - vmin) % mod, mod);
  int64_t s = (x + y) % mod;
  if (s == 0) return zero(p_, a);
  int t = 0;
  while (s % p_ == 0) {
    s /= p_;
    ++t;
  }
  return PAdicScalar(p_, vmin + t, s, width - t);
}

PAdicScalar PAdicScalar::operator*(const PAdicScalar& o) const {
  if (p_ != o.p_) throw DomainError("mixed primes");
  if (zero_ || o.zero_) {
    // absolute precision of 0·y is abs(0) + v(y)
    if (is_exact_zero() || o.is_exact_zero()) return zero(p_);
    if (zero_ && o.zero_) return zero(p_, abs_prec_ + o.abs_prec_);
    return zero_ ? zero(p_, abs_prec_ + o.v_) : zero(p_, o.abs_prec_ + v_);
  }
  int k = std::min(prec_, o.prec_);
  int64_t mod = ipow(p_, k);
  return PAdicScalar(p_, v_ + o.v_, mulmod(u_ % mod, o.u_ % mod, mod), k);
}

PAdicScalar PAdicScalar::inverse() const {
  if (zero_) throw DomainError("inverse of zero");
  return PAdicScalar(p_, -v_, invmod(u_, ipow(p_, prec_)), prec_);
}

PAdicScalar PAdicScalar::with_precision(int precision) const {
  if (zero_ || precision >= prec_) return *this;
  if (precision <= 0) throw DomainError("precision must be positive");
  return PAdicScalar(p_, v_, u_ % ipow(p_, precision), precision);
}

bool PAdicScalar::congruent(const PAdicScalar& o) const {
  PAdicScalar d = *this - o;
  return d.is_zero();
}

Rational PAdicScalar::abs_p() const {
  if (zero_) {
    if (abs_prec_ != kExact) throw PrecisionExhausted("|x| of an inexact zero");
    return Rational(0);
  }
  return v_ >= 0 ? Rational(1, ipow(p_, v_)) : Rational(ipow(p_, -v_));
}

int64_t PAdicScalar::digits(int lo, int k) const {
  if (k < 0) throw DomainError("digits: negative width");
  if (absolute_precision() < lo + k)
    throw PrecisionExhausted("digits below p^" + std::to_string(lo + k) + " are not determined");
  if (zero_ || k == 0) return 0;
  if (v_ < lo) throw DomainError("digits: valuation below window");
  int shift = v_ - lo;
  if (shift >= k) return 0;
  int64_t mod = ipow(p_, k);
  return mulmod(u_ % mod, ipow(p_, shift), mod);
}

Rational PAdicScalar::representative() const {
  if (zero_) return Rational(0);
  if (v_ >= 0) return Rational(checked_mul(u_, ipow(p_, v_)));
  return Rational(u_, ipow(p_, -v_));
}

std::string PAdicScalar::str() const {
  if (zero_) {
    if (abs_prec_ == kExact) return "0";
    return "0 mod " + std::to_string(p_) + "^" + std::to_string(abs_prec_);
  }
  return std::to_string(p_) + "^" + std::to_string(v_) + " * " + std::to_string(u_) + " mod " +
         std::to_string(p_) + "^" + std::to_string(prec_);
}

PAdicScalar padic_exp(const PAdicScalar& x) {
  const int p = x.prime();
  if (x.is_zero()) return PAdicScalar::from_int(p, 1, x.is_exact_zero() ? PAdicScalar::kDefaultPrecision
                                                                           : std::max(1, x.absolute_precision()));
  if (x.valuation() < 1) throw DomainError("exp: argument must lie in p·O");
  // absolute precision of the result: that of x (terms beyond only add higher digits)
  const int target = x.absolute_precision();
  PAdicScalar sum = PAdicScalar::from_int(p, 1, target);
  PAdicScalar term = PAdicScalar::from_int(p, 1, target);
  for (int n = 1;; ++n) {
    term = term * x / PAdicScalar::from_int(p, n, target);
    if (term.is_zero() || term.valuation() >= target) {
      // v(x^k/k!) ≥ k(v(x) - 1/(p-1)) increases, so all later terms vanish too
      if (n * (x.valuation() * (p - 1) - 1) >= target * (p - 1)) break;
      continue;
    }
    sum = sum + term;
  }
  return sum.with_precision(target);
}

}  // namespace padic
