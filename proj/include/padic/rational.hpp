#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace padic {

// Exact rational with int64 numerator/denominator.  Always reduced, den > 0.
// Every operation is overflow-checked and throws PrecisionExhausted rather
// than wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(int64_t n) : num_(n) {}  // NOLINT: implicit from integers is intended
  Rational(int64_t n, int64_t d);

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  Rational inverse() const;
  Rational abs() const { return num_ < 0 ? -*this : *this; }
  static Rational from_i128(__int128 n, __int128 d);

 private:
  int64_t num_ = 0;
  int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Checked int64 helpers shared by the exact modules.
int64_t checked_add(int64_t a, int64_t b);
int64_t checked_mul(int64_t a, int64_t b);
int64_t narrow_i128(__int128 v);
int64_t gcd_i64(int64_t a, int64_t b);
int64_t lcm_i64(int64_t a, int64_t b);
int64_t ipow(int64_t base, int e);  // checked

// p-adic valuation of a nonzero integer / rational.
int valuation_i64(int64_t n, int64_t p);
int valuation(const Rational& r, int64_t p);

// Modular helpers (modulus < 2^62).
int64_t mod_floor(int64_t a, int64_t m);
int64_t mulmod(int64_t a, int64_t b, int64_t m);
int64_t invmod(int64_t a, int64_t m);

// For x with v_p(x) >= lo: the integer d in [0, p^k) with x ≡ d·p^lo (mod p^(lo+k)).
int64_t residue_digits(const Rational& x, int64_t p, int lo, int k);

}  // namespace padic
