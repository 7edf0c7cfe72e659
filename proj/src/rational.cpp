#include "padic/rational.hpp"

#include <numeric>
#include <ostream>

#include "padic/errors.hpp"

namespace padic {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

int64_t narrow_i128(__int128 v) {
  if (v > INT64_MAX || v < -INT64_MAX) throw PrecisionExhausted("int64 overflow in exact arithmetic");
  return static_cast<int64_t>(v);
}

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw PrecisionExhausted("int64 overflow in exact arithmetic");
  return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw PrecisionExhausted("int64 overflow in exact arithmetic");
  return r;
}

int64_t gcd_i64(int64_t a, int64_t b) { return static_cast<int64_t>(gcd128(a, b)); }

int64_t lcm_i64(int64_t a, int64_t b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / gcd_i64(a, b), b < 0 ? -b : b);
}

int64_t ipow(int64_t base, int e) {
  if (e < 0) throw DomainError("ipow: negative exponent");
  int64_t r = 1;
  for (int i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

Rational Rational::from_i128(__int128 n, __int128 d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  r.num_ = narrow_i128(n);
  r.den_ = narrow_i128(d);
  return r;
}

Rational::Rational(int64_t n, int64_t d) { *this = from_i128(n, d); }

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -num_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) return *this = from_i128(static_cast<__int128>(num_) + o.num_, den_);
  __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  return *this = from_i128(n, d);
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  // cross-cancel first to keep intermediates small
  int64_t g1 = gcd_i64(num_, o.den_), g2 = gcd_i64(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  __int128 n = static_cast<__int128>(num_ / g1) * (o.num_ / g2);
  __int128 d = static_cast<__int128>(den_ / g2) * (o.den_ / g1);
  return *this = from_i128(n, d);
}

Rational Rational::inverse() const {
  if (num_ == 0) throw DomainError("inverse of zero rational");
  return from_i128(den_, num_);
}

Rational& Rational::operator/=(const Rational& o) { return *this *= o.inverse(); }

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

int valuation_i64(int64_t n, int64_t p) {
  if (n == 0) throw DomainError("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int valuation(const Rational& r, int64_t p) {
  return valuation_i64(r.num(), p) - valuation_i64(r.den(), p);
}

int64_t mod_floor(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

int64_t mulmod(int64_t a, int64_t b, int64_t m) {
  __int128 r = static_cast<__int128>(a) * b % m;
  if (r < 0) r += m;
  return static_cast<int64_t>(r);
}

int64_t invmod(int64_t a, int64_t m) {
  // extended Euclid on (a mod m, m)
  int64_t r0 = mod_floor(a, m), r1 = m;
  __int128 s0 = 1, s1 = 0;
  while (r1 != 0) {
    int64_t q = r0 / r1;
    int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    __int128 ts = s0 - q * s1;
    s0 = s1;
    s1 = ts;
  }
  if (r0 != 1) throw DomainError("invmod: not invertible");
  int64_t s = static_cast<int64_t>(s0 % m);
  return s < 0 ? s + m : s;
}

int64_t residue_digits(const Rational& x, int64_t p, int lo, int k) {
  if (k < 0) throw DomainError("residue_digits: negative width");
  int64_t mod = ipow(p, k);
  if (x.is_zero() || mod == 1) return 0;
  int v = valuation(x, p);
  if (v < lo) throw DomainError("residue_digits: valuation below window");
  // x·p^-lo = p^(v-lo) · n'/d' with p ∤ n'd'
  int64_t n = x.num(), d = x.den();
  while (n % p == 0) n /= p;
  while (d % p == 0) d /= p;
  int shift = v - lo;
  if (shift >= k) return 0;
  int64_t u = mulmod(mod_floor(n, mod), invmod(d, mod), mod);
  return mulmod(u, ipow(p, shift), mod);
}

}  // namespace padic
