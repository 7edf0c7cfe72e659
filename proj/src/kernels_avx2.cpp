#include "padic/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace padic::kernels {

namespace {

__attribute__((target("avx2"))) void add_avx2(int64_t* dst, const int64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_add_epi64(a, b));
  }
  for (; i < n; ++i) dst[i] += src[i];
}

__attribute__((target("avx2"))) void sub_avx2(int64_t* dst, const int64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_sub_epi64(a, b));
  }
  for (; i < n; ++i) dst[i] -= src[i];
}

// _mm256_mul_epi32 multiplies the sign-extended low 32 bits of each lane, which
// is exact under the |w|, |src| < 2^31 contract.
__attribute__((target("avx2"))) void axpy_avx2(int64_t* dst, const int64_t* src, std::size_t n, int64_t w) {
  const __m256i vw = _mm256_set1_epi64x(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_add_epi64(a, _mm256_mul_epi32(b, vw)));
  }
  for (; i < n; ++i) dst[i] += w * src[i];
}

__attribute__((target("avx2"))) int64_t max_abs_avx2(const int64_t* src, std::size_t n) {
  __m256i m = _mm256_setzero_si256();
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i neg = _mm256_sub_epi64(zero, v);
    __m256i a = _mm256_blendv_epi8(v, neg, _mm256_cmpgt_epi64(zero, v));
    m = _mm256_blendv_epi8(m, a, _mm256_cmpgt_epi64(a, m));
  }
  alignas(32) int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), m);
  int64_t r = 0;
  for (int64_t l : lanes) r = l > r ? l : r;
  for (; i < n; ++i) {
    int64_t a = src[i] < 0 ? -src[i] : src[i];
    r = a > r ? a : r;
  }
  return r;
}

const Table avx2{Isa::Avx2, "avx2", add_avx2, sub_avx2, axpy_avx2, max_abs_avx2};

}  // namespace

namespace detail {
const Table* avx2_table() { return __builtin_cpu_supports("avx2") ? &avx2 : nullptr; }
}  // namespace detail

}  // namespace padic::kernels

#else

namespace padic::kernels::detail {
const Table* avx2_table() { return nullptr; }
}  // namespace padic::kernels::detail

#endif
