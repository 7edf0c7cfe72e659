#include "padic/linalg.hpp"

#include "padic/errors.hpp"

namespace padic {

RMatrix::RMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  for (const auto& row : rows) {
    if (row.size() != c_) throw DomainError("ragged matrix literal");
    a_.insert(a_.end(), row.begin(), row.end());
  }
}

RMatrix RMatrix::identity(std::size_t n) {
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RMatrix RMatrix::diagonal(const RVector& d) {
  RMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

RMatrix RMatrix::from_columns(const std::vector<RVector>& cols) {
  if (cols.empty()) return {};
  RMatrix m(cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != m.r_) throw DomainError("column size mismatch");
    for (std::size_t i = 0; i < m.r_; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

RVector RMatrix::column(std::size_t j) const {
  RVector v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

RMatrix RMatrix::transpose() const {
  RMatrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RMatrix RMatrix::operator*(const RMatrix& o) const {
  if (c_ != o.r_) throw DomainError("matrix product shape mismatch");
  RMatrix m(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const Rational& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.c_; ++j) m(i, j) += x * o(k, j);
    }
  return m;
}

RVector RMatrix::operator*(const RVector& v) const {
  if (c_ != v.size()) throw DomainError("matrix-vector shape mismatch");
  RVector out(r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

RMatrix RMatrix::operator+(const RMatrix& o) const {
  RMatrix m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
  return m;
}

RMatrix RMatrix::operator-(const RMatrix& o) const {
  RMatrix m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
  return m;
}

RMatrix RMatrix::scaled(const Rational& s) const {
  RMatrix m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

namespace {

// Row-reduce in place; returns pivot columns.  det_sign accumulates swaps.
std::vector<std::size_t> eliminate(RMatrix& m, Rational* det) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  if (det) *det = 1;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) {
      if (det) *det = 0;
      continue;
    }
    if (piv != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
      if (det) *det = -*det;
    }
    Rational inv = m(row, col).inverse();
    if (det) *det *= m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Rational f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Rational RMatrix::det() const {
  if (r_ != c_) throw DomainError("determinant of a non-square matrix");
  if (r_ == 0) return 1;
  RMatrix m = *this;
  Rational d;
  auto piv = eliminate(m, &d);
  return piv.size() == r_ ? d : Rational(0);
}

std::size_t RMatrix::rank() const {
  RMatrix m = *this;
  return eliminate(m, nullptr).size();
}

RMatrix RMatrix::inverse() const {
  if (r_ != c_) throw DomainError("inverse of a non-square matrix");
  RMatrix aug(r_, 2 * r_);
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t j = 0; j < r_; ++j) aug(i, j) = (*this)(i, j);
    aug(i, r_ + i) = 1;
  }
  auto piv = eliminate(aug, nullptr);
  if (piv.size() < r_ || piv[r_ - 1] != r_ - 1) throw DomainError("singular matrix");
  RMatrix inv(r_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < r_; ++j) inv(i, j) = aug(i, r_ + j);
  return inv;
}

std::vector<RVector> RMatrix::kernel() const {
  RMatrix m = *this;
  auto piv = eliminate(m, nullptr);
  std::vector<bool> is_piv(c_, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<RVector> basis;
  for (std::size_t free = 0; free < c_; ++free) {
    if (is_piv[free]) continue;
    RVector v(c_);
    v[free] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool RMatrix::is_symmetric() const {
  if (r_ != c_) return false;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!((*this)(i, j) == (*this)(j, i))) return false;
  return true;
}

bool RMatrix::is_antisymmetric() const {
  if (r_ != c_) return false;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (!((*this)(i, j) == -(*this)(j, i))) return false;
  return true;
}

Rational dot(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) throw DomainError("dot: size mismatch");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_p_integral(const RVector& v, int p) {
  for (const auto& x : v)
    if (!x.is_zero() && valuation(x, p) < 0) return false;
  return true;
}

bool is_p_integral(const RMatrix& m, int p) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && valuation(m(i, j), p) < 0) return false;
  return true;
}

}  // namespace padic
