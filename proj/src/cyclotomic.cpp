#include "padic/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "padic/errors.hpp"
#include "padic/kernels.hpp"

namespace padic {

namespace {

// bound kept well below 2^63 so folding (≤ 4 extra contributions) cannot overflow
constexpr int64_t kBoundLimit = int64_t{1} << 58;

int64_t p_power(int p, int K) { return K == 0 ? 1 : ipow(p, K); }

int64_t phi_of(int p, int K) { return K == 0 ? 1 : (p - 1) * ipow(p, K - 1); }

int common_prime(int p, int q) {
  if (p == 0) return q;
  if (q == 0 || p == q) return p;
  throw DomainError("cyclotomic values over different primes");
}

int legendre(int64_t x, int p) {
  x = mod_floor(x, p);
  if (x == 0) return 0;
  int64_t r = 1, b = x, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

bool is_square_i64(int64_t n, int64_t& root) {
  if (n < 0) return false;
  int64_t r = static_cast<int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  root = r;
  return r * r == n;
}

}  // namespace

void CyclotomicValue::set_shape(int p, int K) {
  K_ = K;
  p_ = K == 0 ? 0 : p;
  phi_ = phi_of(p, K);
  num_.assign(static_cast<std::size_t>(4 * phi_), 0);
}

CyclotomicValue::CyclotomicValue(const Rational& r) {
  num_[0] = r.num();
  den_ = r.den();
}

int64_t CyclotomicValue::conductor() const { return 8 * p_power(p_, K_); }

CyclotomicValue CyclotomicValue::monomial(int p, int K, int64_t a, int64_t j, const Rational& c) {
  PhaseAccumulator acc(p, K);
  acc.add_monomial(a, j, c);
  return acc.result();
}

CyclotomicValue CyclotomicValue::from_residues(int p, int K,
                                               const std::vector<std::pair<int64_t, Rational>>& terms) {
  const int64_t P = p_power(p, K);
  const int64_t inv_p8 = invmod(P % 8, 8);
  const int64_t inv_8 = P == 1 ? 0 : invmod(8 % P, P);
  PhaseAccumulator acc(p, K);
  for (const auto& [t, c] : terms) {
    int64_t a = mulmod(mod_floor(t, 8), inv_p8, 8);
    int64_t j = P == 1 ? 0 : mulmod(mod_floor(t, P), inv_8, P);
    acc.add_monomial(a, j, c);
  }
  return acc.result();
}

std::vector<std::pair<int64_t, Rational>> CyclotomicValue::residue_terms() const {
  std::vector<std::pair<int64_t, Rational>> out;
  const int64_t P = p_power(p_, K_), N = 8 * P;
  for (int a = 0; a < 4; ++a)
    for (int64_t j = 0; j < phi_; ++j) {
      int64_t c = num_[a * phi_ + j];
      if (c != 0) out.emplace_back((a * P + 8 * j) % N, Rational(c, den_));
    }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

Rational CyclotomicValue::coefficient(int a, int64_t j) const {
  if (a < 0 || a >= 4 || j < 0 || j >= phi_) return Rational(0);
  return Rational(num_[a * phi_ + j], den_);
}

bool CyclotomicValue::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](int64_t c) { return c == 0; });
}

bool CyclotomicValue::is_rational() const {
  return K_ == 0 && num_[1] == 0 && num_[2] == 0 && num_[3] == 0;
}

Rational CyclotomicValue::rational_value() const {
  if (!is_rational()) throw DomainError("cyclotomic value is not rational");
  return Rational(num_[0], den_);
}

void CyclotomicValue::normalize() {
  int64_t g = den_;
  for (int64_t c : num_)
    if (c != 0) g = gcd_i64(g, c);
  if (is_zero()) {
    set_shape(0, 0);
    den_ = 1;
    return;
  }
  if (g > 1) {
    for (auto& c : num_) c /= g;
    den_ /= g;
  }
  while (K_ >= 1) {
    bool descend = true;
    for (int a = 0; a < 4 && descend; ++a)
      for (int64_t j = 0; j < phi_; ++j) {
        if (num_[a * phi_ + j] == 0) continue;
        if (K_ == 1 ? j != 0 : j % p_ != 0) {
          descend = false;
          break;
        }
      }
    if (!descend) break;
    std::vector<int64_t> old = std::move(num_);
    int64_t old_phi = phi_;
    set_shape(p_, K_ - 1);
    const int64_t step = K_ == 0 ? old_phi : p_;
    for (int a = 0; a < 4; ++a)
      for (int64_t j = 0; j < phi_; ++j) num_[a * phi_ + j] = old[a * old_phi + j * step];
  }
}

CyclotomicValue CyclotomicValue::operator-() const {
  CyclotomicValue r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

CyclotomicValue& CyclotomicValue::operator+=(const CyclotomicValue& o) {
  const int p = common_prime(p_, o.p_);
  PhaseAccumulator acc(p, std::max(K_, o.K_));
  acc.add(*this);
  acc.add(o);
  return *this = acc.result();
}

CyclotomicValue& CyclotomicValue::operator-=(const CyclotomicValue& o) { return *this += -o; }

CyclotomicValue operator*(const CyclotomicValue& a, const CyclotomicValue& b) {
  const int p = common_prime(a.p_, b.p_);
  PhaseAccumulator acc(p, std::max(a.K_, b.K_));
  acc.add_product(a, b);
  return acc.result();
}

CyclotomicValue& CyclotomicValue::operator*=(const CyclotomicValue& o) { return *this = *this * o; }

bool operator==(const CyclotomicValue& a, const CyclotomicValue& b) {
  return a.K_ == b.K_ && (a.K_ == 0 || a.p_ == b.p_) && a.den_ == b.den_ && a.num_ == b.num_;
}

CyclotomicValue CyclotomicValue::scaled(const Rational& r) const {
  if (r.is_zero()) return CyclotomicValue();
  CyclotomicValue out = *this;
  // (n/d)·(c/D): multiply numerators by n, denominator by d, then reduce
  for (auto& c : out.num_) c = checked_mul(c, r.num());
  out.den_ = checked_mul(out.den_, r.den());
  out.normalize();
  return out;
}

CyclotomicValue CyclotomicValue::conj() const {
  PhaseAccumulator acc(p_ == 0 ? 3 : p_, K_);
  const int64_t P = p_power(p_, K_);
  for (int a = 0; a < 4; ++a)
    for (int64_t j = 0; j < phi_; ++j) {
      int64_t c = num_[a * phi_ + j];
      if (c != 0) acc.add_monomial(-a, P == 1 ? 0 : -j, Rational(c, den_));
    }
  return acc.result();
}

CyclotomicValue CyclotomicValue::rotated(int p, int K, int64_t a, int64_t j) const {
  const int prime = common_prime(p_, K == 0 ? 0 : p);
  PhaseAccumulator acc(prime == 0 ? 3 : prime, std::max(K, K_));
  acc.add(*this, a, j * (p_power(prime, std::max(K, K_)) / p_power(prime, K)));
  return acc.result();
}

std::complex<double> CyclotomicValue::to_complex() const {
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const long double P = static_cast<long double>(p_power(p_, K_));
  long double re = 0, im = 0;
  for (int a = 0; a < 4; ++a)
    for (int64_t j = 0; j < phi_; ++j) {
      int64_t c = num_[a * phi_ + j];
      if (c == 0) continue;
      long double ang = two_pi * (static_cast<long double>(a) / 8.0L + static_cast<long double>(j) / P);
      re += static_cast<long double>(c) * std::cos(ang);
      im += static_cast<long double>(c) * std::sin(ang);
    }
  const long double d = static_cast<long double>(den_);
  return {static_cast<double>(re / d), static_cast<double>(im / d)};
}

std::string CyclotomicValue::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  const int64_t P = p_power(p_, K_);
  bool first = true;
  for (int a = 0; a < 4; ++a)
    for (int64_t j = 0; j < phi_; ++j) {
      int64_t c = num_[a * phi_ + j];
      if (c == 0) continue;
      Rational q(c, den_);
      if (!first) os << (q < Rational(0) ? " - " : " + ");
      else if (q < Rational(0)) os << "-";
      first = false;
      os << q.abs().str();
      if (a) os << "*z8^" << a;
      if (j) os << "*z" << P << "^" << j;
    }
  return os.str();
}

CyclotomicValue CyclotomicValue::sqrt_rational(int p, const Rational& r) {
  if (!(r > Rational(0))) throw DomainError("sqrt_rational: argument must be positive");
  int64_t n = r.num(), d = r.den();
  int e = 0, f = 0;
  while (n % p == 0) n /= p, ++e;
  while (d % p == 0) d /= p, --e;
  while (n % 2 == 0) n /= 2, ++f;
  while (d % 2 == 0) d /= 2, --f;
  int64_t rn, rd;
  if (!is_square_i64(n, rn) || !is_square_i64(d, rd))
    throw DomainError("sqrt_rational: " + r.str() + " has no square root in Q(zeta_8p^K)");
  // r = p^e 2^f (rn/rd)²;  write e = 2e' + e0, f = 2f' + f0 with e0, f0 ∈ {0,1}
  auto split = [](int x, int& half) {
    int rem = ((x % 2) + 2) % 2;
    half = (x - rem) / 2;
    return rem;
  };
  int eh, fh;
  int e0 = split(e, eh), f0 = split(f, fh);
  Rational scale(rn, rd);
  scale *= eh >= 0 ? Rational(ipow(p, eh)) : Rational(1, ipow(p, -eh));
  scale *= fh >= 0 ? Rational(ipow(2, fh)) : Rational(1, ipow(2, -fh));
  CyclotomicValue out(scale);
  if (e0) {
    // g = Σ (x/p) ζ_p^x;  g² = (−1/p)·p
    PhaseAccumulator acc(p, 1);
    for (int x = 1; x < p; ++x) acc.add_monomial(0, x, Rational(legendre(x, p)));
    CyclotomicValue g = acc.result();
    if (p % 4 == 3) g = g * monomial(0, 0, 6, 0);  // −i·g
    out = out * g;
  }
  if (f0) out = out * (zeta8(1) - zeta8(3));
  return out;
}

// ---------------------------------------------------------------------------

PhaseAccumulator::PhaseAccumulator(int p, int K)
    : p_(p), K_(K), P_(p_power(p, K)), phi_(phi_of(p, K)), acc_(static_cast<std::size_t>(8 * P_), 0) {
  if (K > 0 && (p < 3 || p % 2 == 0)) throw DomainError("accumulator needs an odd prime");
}

void PhaseAccumulator::rescale_to(int64_t den) {
  if (den_ % den == 0) return;
  int64_t target = lcm_i64(den_, den);
  int64_t f = target / den_;
  if (bound_ > 0 && (bound_ > kBoundLimit / f)) flush();
  if (bound_ > 0)
    for (auto& c : acc_) c *= f;
  bound_ *= f;
  den_ = target;
}

void PhaseAccumulator::ensure_room(int64_t extra) {
  if (extra > kBoundLimit) throw PrecisionExhausted("cyclotomic coefficient exceeds int64 range");
  if (bound_ > kBoundLimit - extra) flush();
  bound_ += extra;
}

void PhaseAccumulator::add_monomial(int64_t a, int64_t j, const Rational& c) {
  if (c.is_zero()) return;
  rescale_to(c.den());
  int64_t w = checked_mul(c.num(), den_ / c.den());
  ensure_room(w < 0 ? -w : w);
  acc_[static_cast<std::size_t>(mod_floor(a, 8) * P_ + mod_floor(j, P_))] += w;
}

namespace {

// dst_row[(jj + shift) mod P] += w·src[jj], jj < len
void rotate_axpy(int64_t* dst_row, int64_t P, const int64_t* src, int64_t len, int64_t shift, int64_t w,
                 int64_t src_bound) {
  int64_t first = std::min(len, P - shift);
  kernels::axpy(dst_row + shift, src, static_cast<std::size_t>(first), w, src_bound);
  if (first < len) kernels::axpy(dst_row, src + first, static_cast<std::size_t>(len - first), w, src_bound);
}

}  // namespace

const int64_t* PhaseAccumulator::lift(const CyclotomicValue& v, std::vector<int64_t>& scratch) const {
  if (v.K_ > K_) throw DomainError("accumulator level too small for value");
  if (v.K_ > 0 && v.p_ != p_) throw DomainError("accumulator prime mismatch");
  if (v.K_ == K_) return v.num_.data();
  // j ↦ j·p^ΔK keeps the canonical basis, so lifting is a strided copy
  scratch.assign(static_cast<std::size_t>(4 * phi_), 0);
  const int64_t stride = P_ / p_power(p_, v.K_);
  for (int r = 0; r < 4; ++r)
    for (int64_t jj = 0; jj < v.phi_; ++jj) scratch[r * phi_ + jj * stride] = v.num_[r * v.phi_ + jj];
  return scratch.data();
}

PhaseAccumulator::Prepared PhaseAccumulator::prepare(const CyclotomicValue& v) const {
  Prepared out;
  if (v.is_zero()) return out;
  std::vector<int64_t> scratch;
  const int64_t* src = lift(v, scratch);
  out.num.assign(src, src + 4 * phi_);
  out.den = v.den_;
  const auto& kt = kernels::active();
  out.bound = kt.max_abs(out.num.data(), out.num.size());
  for (int r = 0; r < 4; ++r) out.live[r] = kt.max_abs(out.num.data() + r * phi_, static_cast<std::size_t>(phi_)) != 0;
  return out;
}

void PhaseAccumulator::add(const Prepared& v, int64_t a, int64_t j, int64_t w) {
  if (v.zero() || w == 0) return;
  if (v.num.size() != static_cast<std::size_t>(4 * phi_)) throw DomainError("prepared value has the wrong level");
  rescale_to(v.den);
  const int64_t W = checked_mul(w, den_ / v.den);
  ensure_room(narrow_i128(static_cast<__int128>(W < 0 ? -W : W) * v.bound));
  const int64_t shift = mod_floor(j, P_);
  for (int r = 0; r < 4; ++r)
    if (v.live[r]) rotate_axpy(acc_.data() + mod_floor(r + a, 8) * P_, P_, v.num.data() + r * phi_, phi_, shift, W, v.bound);
}

void PhaseAccumulator::add(const CyclotomicValue& v, int64_t a, int64_t j, int64_t w) {
  if (v.is_zero() || w == 0) return;
  add(prepare(v), a, j, w);
}

void PhaseAccumulator::add_product(const CyclotomicValue& x, const CyclotomicValue& y) {
  if (x.is_zero() || y.is_zero()) return;
  add_product(x, prepare(y));
}

void PhaseAccumulator::add_product(const CyclotomicValue& x, const Prepared& y) {
  if (x.is_zero() || y.zero()) return;
  if (x.K_ > K_ || (x.K_ > 0 && x.p_ != p_)) throw DomainError("accumulator level/prime mismatch");
  const int64_t dd = checked_mul(x.den_, y.den);
  rescale_to(dd);
  const int64_t f = den_ / dd;
  const int64_t xstride = P_ / p_power(p_, x.K_);
  for (int a1 = 0; a1 < 4; ++a1)
    for (int64_t j1 = 0; j1 < x.phi_; ++j1) {
      const int64_t c = x.num_[a1 * x.phi_ + j1];
      if (c == 0) continue;
      const int64_t W = checked_mul(c, f);
      ensure_room(narrow_i128(static_cast<__int128>(W < 0 ? -W : W) * y.bound));
      for (int r = 0; r < 4; ++r)
        if (y.live[r])
          rotate_axpy(acc_.data() + ((a1 + r) % 8) * P_, P_, y.num.data() + r * phi_, phi_, j1 * xstride, W, y.bound);
    }
}

void PhaseAccumulator::flush() {
  if (bound_ == 0) return;
  CyclotomicValue cur;
  cur.set_shape(p_, K_);
  std::vector<int64_t> rows = acc_;
  const auto& kt = kernels::active();
  for (int a = 4; a < 8; ++a) kt.sub(rows.data() + (a - 4) * P_, rows.data() + a * P_, static_cast<std::size_t>(P_));
  if (K_ >= 1) {
    const int64_t B = P_ / p_;
    for (int a = 0; a < 4; ++a) {
      int64_t* row = rows.data() + a * P_;
      for (int i = 0; i < p_ - 1; ++i) kt.sub(row + i * B, row + phi_, static_cast<std::size_t>(B));
    }
  }
  for (int a = 0; a < 4; ++a)
    std::copy(rows.begin() + a * P_, rows.begin() + a * P_ + phi_, cur.num_.begin() + a * phi_);
  cur.den_ = den_;
  cur.normalize();
  std::fill(acc_.begin(), acc_.end(), 0);
  bound_ = 0;
  if (partial_.is_zero()) {
    partial_ = cur;
  } else {
    PhaseAccumulator merge(p_, K_);
    merge.add(partial_);
    merge.add(cur);
    partial_ = merge.result();
  }
}

void PhaseAccumulator::clear() {
  if (bound_ != 0) std::fill(acc_.begin(), acc_.end(), 0);
  bound_ = 0;
  den_ = 1;
  partial_ = CyclotomicValue();
}

CyclotomicValue PhaseAccumulator::result() const {
  PhaseAccumulator copy = *this;
  copy.flush();
  return copy.partial_;
}

}  // namespace padic
