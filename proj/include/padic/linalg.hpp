#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "padic/rational.hpp"

namespace padic {

using RVector = std::vector<Rational>;

// Small dense matrix over Q (row-major).  Sizes here are ≤ 6, so plain
// Gaussian elimination is all we need.
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  RMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
  static RMatrix identity(std::size_t n);
  static RMatrix diagonal(const RVector& d);
  static RMatrix from_columns(const std::vector<RVector>& cols);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  RVector column(std::size_t j) const;

  RMatrix transpose() const;
  RMatrix operator*(const RMatrix& o) const;
  RVector operator*(const RVector& v) const;
  RMatrix operator+(const RMatrix& o) const;
  RMatrix operator-(const RMatrix& o) const;
  RMatrix scaled(const Rational& s) const;
  bool operator==(const RMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

  Rational det() const;
  std::size_t rank() const;
  RMatrix inverse() const;            // throws DomainError when singular
  std::vector<RVector> kernel() const;  // basis of {x : Ax = 0}
  bool is_symmetric() const;
  bool is_antisymmetric() const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Rational> a_;
};

Rational dot(const RVector& a, const RVector& b);

// True when every entry has nonnegative p-adic valuation.
bool is_p_integral(const RVector& v, int p);
bool is_p_integral(const RMatrix& m, int p);

}  // namespace padic
