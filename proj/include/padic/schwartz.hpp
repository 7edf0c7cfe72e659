#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "padic/cyclotomic.hpp"
#include "padic/linalg.hpp"

namespace padic {

// Haar measure on kⁿ recorded as vol(𝒪ⁿ) = p^scale.  The dual measure for
// the standard character has scale −scale.
struct HaarMeasure {
  int scale = 0;
  HaarMeasure dual() const { return {-scale}; }
  bool operator==(const HaarMeasure&) const = default;
};

// Locally constant, compactly supported function on kⁿ: zero outside
// ϖ^{-M}𝒪ⁿ and constant on cosets of ϖ^{m}𝒪ⁿ.  The table is indexed by
// digit vectors d ∈ [0, p^{M+m})ⁿ, the cell of x = d·p^{-M} (first
// coordinate most significant).
class SchwartzFunction {
 public:
  SchwartzFunction() = default;
  SchwartzFunction(int p, int n, int M, int m, HaarMeasure mu = {});
  SchwartzFunction(int p, int n, int M, int m, std::vector<CyclotomicValue> table, HaarMeasure mu = {});

  static SchwartzFunction indicator(int p, int n, int k, HaarMeasure mu = {});  // 1_{ϖ^k 𝒪ⁿ}
  static SchwartzFunction from_function(int p, int n, int M, int m,
                                        const std::function<CyclotomicValue(const RVector&)>& f,
                                        HaarMeasure mu = {});

  int prime() const { return p_; }
  int dim() const { return n_; }
  int outer() const { return M_; }
  int inner() const { return m_; }
  HaarMeasure measure() const { return mu_; }
  int64_t side() const { return side_; }
  std::size_t cells() const { return table_.size(); }
  const std::vector<CyclotomicValue>& table() const { return table_; }
  const CyclotomicValue& at(std::size_t idx) const { return table_[idx]; }
  void set(std::size_t idx, CyclotomicValue v) { table_[idx] = std::move(v); }

  std::vector<int64_t> digits_of(std::size_t idx) const;
  std::size_t index_of(const std::vector<int64_t>& digits) const;
  RVector point(std::size_t idx) const;  // representative d·p^{-M}
  Rational cell_volume() const;          // includes the measure scale

  CyclotomicValue evaluate(const RVector& x) const;

  // Same function on a larger window (M' ≥ M, m' ≥ m).
  SchwartzFunction refined(int M, int m) const;
  SchwartzFunction canonical() const;
  bool is_zero() const;

  SchwartzFunction operator+(const SchwartzFunction& o) const;
  SchwartzFunction operator-(const SchwartzFunction& o) const;
  SchwartzFunction operator*(const SchwartzFunction& o) const;  // pointwise
  SchwartzFunction scaled(const CyclotomicValue& c) const;
  SchwartzFunction conj() const;
  SchwartzFunction reflected() const;  // x ↦ φ(−x)
  // ψ(y) = φ(A y) for A ∈ GL_n(𝒪) (p-integral, unit determinant).
  SchwartzFunction pullback(const RMatrix& A) const;
  // Integrate out the trailing n−k coordinates.
  SchwartzFunction integrate_trailing(int k) const;
  // Restrict to the leading k coordinates (trailing ones set to 0).
  SchwartzFunction restrict_leading(int k) const;

  CyclotomicValue integral() const;

  // Canonical-form equality.
  friend bool operator==(const SchwartzFunction& a, const SchwartzFunction& b);

 private:
  int p_ = 3, n_ = 1, M_ = 0, m_ = 0;
  HaarMeasure mu_{};
  int64_t side_ = 1;
  std::vector<CyclotomicValue> table_ = std::vector<CyclotomicValue>(1);
};

// Fourier transform φ̂(l) = ∫ φ(x) ς(⟨l,x⟩) dμ(x).  Support ϖ^{-M}, level m
// maps to support ϖ^{-m}, level M; the result carries the dual measure.
SchwartzFunction fourier(const SchwartzFunction& phi);

struct InversionReport {
  CyclotomicValue value_at_zero;  // φ(0)
  CyclotomicValue dual_integral;  // ∫ φ̂ d(dual measure)
  bool equal;
};
InversionReport fourier_inverse_check(const SchwartzFunction& phi);

// (φ*ψ)(x) = ∫ φ(y) ψ(x−y) dμ(y), by direct summation.
SchwartzFunction convolve(const SchwartzFunction& phi, const SchwartzFunction& psi);

// Given F on V* and W ⊆ V spanned by the columns of `w_basis` (an n×k
// p-integral matrix of rank k mod p), returns ∫_{W^⊥} F(l̃ + λ) dλ as a
// function on W* in the coordinates dual to the basis.  Measures: d_W puts
// volume 1 on the 𝒪-span of the basis, the V/W quotient likewise.
SchwartzFunction restrict_fiber_integrate(const SchwartzFunction& F, const RMatrix& w_basis);

// Restriction φ|_W in the coordinates of the basis (same conventions).
SchwartzFunction restrict_to_subspace(const SchwartzFunction& phi, const RMatrix& w_basis);

// Completes the columns of w_basis to a matrix in GL_n(𝒪).
RMatrix complete_basis(const RMatrix& w_basis, int p);

}  // namespace padic
