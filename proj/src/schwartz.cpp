#include "padic/schwartz.hpp"

#include <algorithm>

#include "padic/errors.hpp"

namespace padic {

namespace {

Rational p_pow(int p, int e) { return e >= 0 ? Rational(ipow(p, e)) : Rational(1, ipow(p, -e)); }

int max_level(const std::vector<CyclotomicValue>& t) {
  int K = 0;
  for (const auto& v : t) K = std::max(K, v.level());
  return K;
}

void require_same(const SchwartzFunction& a, const SchwartzFunction& b) {
  if (a.prime() != b.prime() || a.dim() != b.dim()) throw DomainError("functions on different spaces");
  if (!(a.measure() == b.measure())) throw DomainError("mismatched Haar measure tags");
}

int mod_p_rank(const RMatrix& m, int p) {
  std::vector<std::vector<int64_t>> a(m.rows(), std::vector<int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = residue_digits(m(i, j), p, 0, 1);
  int rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < static_cast<int>(m.rows()); ++col) {
    std::size_t piv = rank;
    while (piv < m.rows() && a[piv][col] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[rank]);
    int64_t inv = invmod(a[rank][col], p);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (static_cast<int>(i) == rank || a[i][col] == 0) continue;
      int64_t f = a[i][col] * inv % p;
      for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = mod_floor(a[i][j] - f * a[rank][j], p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

SchwartzFunction::SchwartzFunction(int p, int n, int M, int m, HaarMeasure mu)
    : SchwartzFunction(p, n, M, m, {}, mu) {}

SchwartzFunction::SchwartzFunction(int p, int n, int M, int m, std::vector<CyclotomicValue> table, HaarMeasure mu)
    : p_(p), n_(n), M_(M), m_(m), mu_(mu) {
  if (n < 0) throw DomainError("negative dimension");
  if (M < 0 || m < -M) throw DomainError("window levels must satisfy M >= 0, m >= -M");
  side_ = ipow(p, M + m);
  std::size_t cells = 1;
  for (int i = 0; i < n; ++i) cells = static_cast<std::size_t>(checked_mul(static_cast<int64_t>(cells), side_));
  if (table.empty()) table.resize(cells);
  if (table.size() != cells) throw DomainError("table size does not match the window");
  table_ = std::move(table);
  for (const auto& v : table_)
    if (v.level() > 0 && v.prime() != p) throw DomainError("table value over a different prime");
}

SchwartzFunction SchwartzFunction::indicator(int p, int n, int k, HaarMeasure mu) {
  // k ≥ 0: the zero cell of (𝒪/ϖ^k)ⁿ; k < 0: the single cell of ϖ^k𝒪ⁿ
  SchwartzFunction f(p, n, std::max(0, -k), k, mu);
  f.table_[0] = CyclotomicValue(1);
  return f;
}

SchwartzFunction SchwartzFunction::from_function(int p, int n, int M, int m,
                                                 const std::function<CyclotomicValue(const RVector&)>& f,
                                                 HaarMeasure mu) {
  SchwartzFunction out(p, n, M, m, mu);
  for (std::size_t i = 0; i < out.cells(); ++i) out.table_[i] = f(out.point(i));
  return out;
}

std::vector<int64_t> SchwartzFunction::digits_of(std::size_t idx) const {
  std::vector<int64_t> d(n_);
  for (int i = n_ - 1; i >= 0; --i) {
    d[i] = static_cast<int64_t>(idx % side_);
    idx /= side_;
  }
  return d;
}

std::size_t SchwartzFunction::index_of(const std::vector<int64_t>& digits) const {
  std::size_t idx = 0;
  for (int i = 0; i < n_; ++i) idx = idx * side_ + static_cast<std::size_t>(mod_floor(digits[i], side_));
  return idx;
}

RVector SchwartzFunction::point(std::size_t idx) const {
  auto d = digits_of(idx);
  RVector x(n_);
  for (int i = 0; i < n_; ++i) x[i] = Rational(d[i]) * p_pow(p_, -M_);
  return x;
}

Rational SchwartzFunction::cell_volume() const { return p_pow(p_, -m_ * n_ + mu_.scale); }

CyclotomicValue SchwartzFunction::evaluate(const RVector& x) const {
  if (static_cast<int>(x.size()) != n_) throw DomainError("evaluate: dimension mismatch");
  std::vector<int64_t> d(n_);
  for (int i = 0; i < n_; ++i) {
    if (!x[i].is_zero() && valuation(x[i], p_) < -M_) return CyclotomicValue();
    d[i] = residue_digits(x[i], p_, -M_, M_ + m_);
  }
  return table_[index_of(d)];
}

SchwartzFunction SchwartzFunction::refined(int M, int m) const {
  if (M < M_ || m < m_) throw DomainError("refined: window must grow");
  if (M == M_ && m == m_) return *this;
  SchwartzFunction out(p_, n_, M, m, mu_);
  const int64_t shift = ipow(p_, M - M_);
  std::vector<int64_t> od(n_);
  for (std::size_t i = 0; i < out.cells(); ++i) {
    auto d = out.digits_of(i);
    bool inside = true;
    for (int k = 0; k < n_; ++k) {
      if (d[k] % shift != 0) {
        inside = false;
        break;
      }
      od[k] = (d[k] / shift) % side_;
    }
    if (inside) out.table_[i] = table_[index_of(od)];
  }
  return out;
}

bool SchwartzFunction::is_zero() const {
  return std::all_of(table_.begin(), table_.end(), [](const CyclotomicValue& v) { return v.is_zero(); });
}

SchwartzFunction SchwartzFunction::canonical() const {
  if (is_zero()) return SchwartzFunction(p_, n_, 0, 0, mu_);
  SchwartzFunction cur = *this;
  // trim zero outer shells
  while (cur.M_ > 0 && cur.m_ > -cur.M_) {
    bool ok = true;
    for (std::size_t i = 0; i < cur.cells() && ok; ++i) {
      if (cur.table_[i].is_zero()) continue;
      for (int64_t d : cur.digits_of(i))
        if (d % cur.p_ != 0) {
          ok = false;
          break;
        }
    }
    if (!ok) break;
    SchwartzFunction next(p_, n_, cur.M_ - 1, cur.m_, mu_);
    for (std::size_t i = 0; i < next.cells(); ++i) {
      auto d = next.digits_of(i);
      for (auto& x : d) x *= p_;
      next.table_[i] = cur.table_[cur.index_of(d)];
    }
    cur = std::move(next);
  }
  // merge constant refinements
  while (cur.m_ > -cur.M_) {
    const int64_t coarse = cur.side_ / cur.p_;
    bool ok = true;
    for (std::size_t i = 0; i < cur.cells() && ok; ++i) {
      auto d = cur.digits_of(i);
      for (auto& x : d) x %= coarse;
      if (cur.table_[i] != cur.table_[cur.index_of(d)]) ok = false;
    }
    if (!ok) break;
    SchwartzFunction next(p_, n_, cur.M_, cur.m_ - 1, mu_);
    for (std::size_t i = 0; i < next.cells(); ++i) next.table_[i] = cur.table_[cur.index_of(next.digits_of(i))];
    cur = std::move(next);
  }
  return cur;
}

namespace {

template <class Op>
SchwartzFunction combine(const SchwartzFunction& a, const SchwartzFunction& b, Op op) {
  require_same(a, b);
  int M = std::max(a.outer(), b.outer()), m = std::max(a.inner(), b.inner());
  SchwartzFunction x = a.refined(M, m), y = b.refined(M, m);
  std::vector<CyclotomicValue> t(x.cells());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = op(x.at(i), y.at(i));
  return SchwartzFunction(a.prime(), a.dim(), M, m, std::move(t), a.measure()).canonical();
}

}  // namespace

SchwartzFunction SchwartzFunction::operator+(const SchwartzFunction& o) const {
  return combine(*this, o, [](const CyclotomicValue& u, const CyclotomicValue& v) { return u + v; });
}

SchwartzFunction SchwartzFunction::operator-(const SchwartzFunction& o) const {
  return combine(*this, o, [](const CyclotomicValue& u, const CyclotomicValue& v) { return u - v; });
}

SchwartzFunction SchwartzFunction::operator*(const SchwartzFunction& o) const {
  return combine(*this, o, [](const CyclotomicValue& u, const CyclotomicValue& v) { return u * v; });
}

SchwartzFunction SchwartzFunction::scaled(const CyclotomicValue& c) const {
  SchwartzFunction out = *this;
  for (auto& v : out.table_) v = v * c;
  return out.canonical();
}

SchwartzFunction SchwartzFunction::conj() const {
  SchwartzFunction out = *this;
  for (auto& v : out.table_) v = v.conj();
  return out;
}

SchwartzFunction SchwartzFunction::reflected() const {
  SchwartzFunction out = *this;
  for (std::size_t i = 0; i < cells(); ++i) {
    auto d = digits_of(i);
    for (auto& x : d) x = mod_floor(-x, side_);
    out.table_[index_of(d)] = table_[i];
  }
  return out;
}

SchwartzFunction SchwartzFunction::pullback(const RMatrix& A) const {
  if (A.rows() != static_cast<std::size_t>(n_) || A.cols() != A.rows()) throw DomainError("pullback: shape");
  if (!is_p_integral(A, p_) || valuation(A.det(), p_) != 0) throw DomainError("pullback: matrix not in GL_n(O)");
  const int L = M_ + m_;
  std::vector<int64_t> a(n_ * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) a[i * n_ + j] = residue_digits(A(i, j), p_, 0, L);
  SchwartzFunction out(p_, n_, M_, m_, mu_);
  std::vector<int64_t> od(n_);
  for (std::size_t i = 0; i < cells(); ++i) {
    auto d = digits_of(i);
    for (int r = 0; r < n_; ++r) {
      __int128 s = 0;
      for (int c = 0; c < n_; ++c) s += static_cast<__int128>(a[r * n_ + c]) * d[c];
      od[r] = static_cast<int64_t>(s % side_);
    }
    out.table_[i] = table_[index_of(od)];
  }
  return out;
}

SchwartzFunction SchwartzFunction::integrate_trailing(int k) const {
  if (k < 0 || k > n_) throw DomainError("integrate_trailing: bad k");
  SchwartzFunction out(p_, k, M_, m_, mu_);
  std::size_t inner = 1;
  for (int i = k; i < n_; ++i) inner *= static_cast<std::size_t>(side_);
  const Rational vol = p_pow(p_, -m_ * (n_ - k));
  for (std::size_t i = 0; i < out.cells(); ++i) {
    const int K = max_level(std::vector<CyclotomicValue>(table_.begin() + i * inner, table_.begin() + (i + 1) * inner));
    PhaseAccumulator acc(p_, K);
    for (std::size_t j = 0; j < inner; ++j) acc.add(table_[i * inner + j]);
    out.table_[i] = acc.result().scaled(vol);
  }
  return out.canonical();
}

SchwartzFunction SchwartzFunction::restrict_leading(int k) const {
  if (k < 0 || k > n_) throw DomainError("restrict_leading: bad k");
  SchwartzFunction out(p_, k, M_, m_, mu_);
  std::size_t inner = 1;
  for (int i = k; i < n_; ++i) inner *= static_cast<std::size_t>(side_);
  for (std::size_t i = 0; i < out.cells(); ++i) out.table_[i] = table_[i * inner];
  return out.canonical();
}

CyclotomicValue SchwartzFunction::integral() const {
  PhaseAccumulator acc(p_, max_level(table_));
  for (const auto& v : table_) acc.add(v);
  return acc.result().scaled(cell_volume());
}

bool operator==(const SchwartzFunction& a, const SchwartzFunction& b) {
  if (a.p_ != b.p_ || a.n_ != b.n_ || !(a.mu_ == b.mu_)) return false;
  SchwartzFunction x = a.canonical(), y = b.canonical();
  return x.M_ == y.M_ && x.m_ == y.m_ && x.table_ == y.table_;
}

// ---------------------------------------------------------------------------

// Input cells x = d·p^{-M}.  If every nonzero cell has d ≡ 0 mod p^k the
// function lives on ϖ^{k−M}𝒪 (possibly inside 𝒪) and the transform is a DFT
// of size S = p^{M+m−k} over d = p^k·d'.  Output l = e'·p^{-m}, stored in
// the window (max(m, 0), M − k) at digits e = e'·p^{max(−m, 0)}; the phase is
// ς(⟨l, x⟩) = ζ_S^{⟨e', d'⟩}.
SchwartzFunction fourier(const SchwartzFunction& phi) {
  const int p = phi.prime(), n = phi.dim(), M = phi.outer(), m = phi.inner();
  const HaarMeasure dual = phi.measure().dual();
  if (phi.is_zero()) return SchwartzFunction(p, n, 0, 0, dual);
  int k = M + m;
  for (std::size_t i = 0; i < phi.cells() && k > 0; ++i) {
    if (phi.at(i).is_zero()) continue;
    for (int64_t d : phi.digits_of(i))
      if (d != 0) k = std::min(k, valuation_i64(d, p));
  }
  const int L = M + m - k;
  const int64_t S = ipow(p, L), pk = ipow(p, k);
  SchwartzFunction reduced(p, n, 0, L);  // only used for its digit indexing
  std::vector<CyclotomicValue> cur(reduced.cells());
  for (std::size_t i = 0; i < cur.size(); ++i) {
    auto d = reduced.digits_of(i);
    for (auto& x : d) x *= pk;
    cur[i] = phi.at(phi.index_of(d));
  }
  const int K = std::max(max_level(cur), L);
  const int64_t lift = ipow(p, K - L);
  std::vector<CyclotomicValue> next(cur.size());
  PhaseAccumulator acc(p, K);
  std::vector<PhaseAccumulator::Prepared> line(static_cast<std::size_t>(S));
  std::size_t stride = cur.size();
  for (int axis = 0; axis < n; ++axis) {
    stride /= static_cast<std::size_t>(S);
    const std::size_t block = stride * static_cast<std::size_t>(S);
    for (std::size_t base0 = 0; base0 < cur.size(); base0 += block)
      for (std::size_t off = 0; off < stride; ++off) {
        const std::size_t base = base0 + off;
        bool any = false;
        for (int64_t d = 0; d < S; ++d) {
          line[d] = acc.prepare(cur[base + d * stride]);
          any = any || !line[d].zero();
        }
        for (int64_t e = 0; e < S; ++e) {
          if (!any) {
            next[base + e * stride] = CyclotomicValue();
            continue;
          }
          acc.clear();
          for (int64_t d = 0; d < S; ++d)
            if (!line[d].zero()) acc.add(line[d], 0, mulmod(e, d, S) * lift);
          next[base + e * stride] = acc.result();
        }
      }
    std::swap(cur, next);
  }
  const Rational vol = phi.cell_volume();
  SchwartzFunction out(p, n, std::max(m, 0), M - k, dual);
  const int64_t step = ipow(p, std::max(-m, 0));
  for (std::size_t i = 0; i < cur.size(); ++i) {
    if (cur[i].is_zero()) continue;
    auto e = reduced.digits_of(i);
    for (auto& x : e) x *= step;
    out.set(out.index_of(e), cur[i].scaled(vol));
  }
  return out.canonical();
}

InversionReport fourier_inverse_check(const SchwartzFunction& phi) {
  InversionReport r;
  r.value_at_zero = phi.evaluate(RVector(phi.dim()));
  r.dual_integral = fourier(phi).integral();
  r.equal = r.value_at_zero == r.dual_integral;
  return r;
}

SchwartzFunction convolve(const SchwartzFunction& a, const SchwartzFunction& b) {
  require_same(a, b);
  const int M = std::max(a.outer(), b.outer()), m = std::max(a.inner(), b.inner());
  SchwartzFunction x = a.refined(M, m), y = b.refined(M, m);
  const int p = a.prime(), n = a.dim();
  const int64_t S = x.side();
  const int K = std::max(max_level(x.table()), max_level(y.table()));
  PhaseAccumulator acc(p, K);
  std::vector<PhaseAccumulator::Prepared> yp(y.cells());
  for (std::size_t i = 0; i < y.cells(); ++i) yp[i] = acc.prepare(y.at(i));
  std::vector<std::vector<int64_t>> digits(x.cells());
  for (std::size_t i = 0; i < x.cells(); ++i) digits[i] = x.digits_of(i);
  std::vector<CyclotomicValue> out(x.cells());
  std::vector<int64_t> dz(n);
  for (std::size_t xi = 0; xi < x.cells(); ++xi) {
    acc.clear();
    for (std::size_t yi = 0; yi < x.cells(); ++yi) {
      if (x.at(yi).is_zero()) continue;
      for (int k = 0; k < n; ++k) dz[k] = mod_floor(digits[xi][k] - digits[yi][k], S);
      acc.add_product(x.at(yi), yp[x.index_of(dz)]);
    }
    out[xi] = acc.result().scaled(x.cell_volume());
  }
  return SchwartzFunction(p, n, M, m, std::move(out), a.measure()).canonical();
}

RMatrix complete_basis(const RMatrix& w, int p) {
  const std::size_t n = w.rows(), k = w.cols();
  if (!is_p_integral(w, p)) throw DomainError("subspace basis must be p-integral");
  if (mod_p_rank(w, p) != static_cast<int>(k)) throw DomainError("subspace basis is not full rank modulo p");
  std::vector<RVector> cols;
  for (std::size_t j = 0; j < k; ++j) cols.push_back(w.column(j));
  for (std::size_t e = 0; e < n && cols.size() < n; ++e) {
    RVector v(n);
    v[e] = 1;
    cols.push_back(v);
    if (mod_p_rank(RMatrix::from_columns(cols), p) != static_cast<int>(cols.size())) cols.pop_back();
  }
  return n ? RMatrix::from_columns(cols) : RMatrix();
}

SchwartzFunction restrict_fiber_integrate(const SchwartzFunction& F, const RMatrix& w_basis) {
  if (F.measure().scale != 0) throw DomainError("restrict_fiber_integrate expects the standard measure tag");
  if (w_basis.rows() != static_cast<std::size_t>(F.dim())) throw DomainError("subspace basis dimension mismatch");
  const int k = static_cast<int>(w_basis.cols());
  if (F.dim() == 0 || k == 0) return F.integrate_trailing(0);
  RMatrix g = complete_basis(w_basis, F.prime());
  // η = gᵀ l: W* coordinates are the leading k of η and W^⊥ the trailing ones
  return F.pullback(g.inverse().transpose()).integrate_trailing(k);
}

SchwartzFunction restrict_to_subspace(const SchwartzFunction& phi, const RMatrix& w_basis) {
  if (w_basis.rows() != static_cast<std::size_t>(phi.dim())) throw DomainError("subspace basis dimension mismatch");
  const int k = static_cast<int>(w_basis.cols());
  if (phi.dim() == 0 || k == 0) return phi.restrict_leading(0);
  return phi.pullback(complete_basis(w_basis, phi.prime())).restrict_leading(k);
}

}  // namespace padic
