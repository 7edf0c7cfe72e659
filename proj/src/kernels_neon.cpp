#include "padic/kernels.hpp"

#if defined(__ARM_NEON) && defined(__aarch64__)
#include <arm_neon.h>

namespace padic::kernels {

namespace {

void add_neon(int64_t* dst, const int64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_s64(dst + i, vaddq_s64(vld1q_s64(dst + i), vld1q_s64(src + i)));
  for (; i < n; ++i) dst[i] += src[i];
}

void sub_neon(int64_t* dst, const int64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_s64(dst + i, vsubq_s64(vld1q_s64(dst + i), vld1q_s64(src + i)));
  for (; i < n; ++i) dst[i] -= src[i];
}

void axpy_neon(int64_t* dst, const int64_t* src, std::size_t n, int64_t w) {
  const int32x2_t vw = vdup_n_s32(static_cast<int32_t>(w));
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    int32x2_t s = vmovn_s64(vld1q_s64(src + i));  // exact under the < 2^31 contract
    vst1q_s64(dst + i, vmlal_s32(vld1q_s64(dst + i), s, vw));
  }
  for (; i < n; ++i) dst[i] += w * src[i];
}

int64_t max_abs_neon(const int64_t* src, std::size_t n) {
  int64_t r = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    int64x2_t a = vabsq_s64(vld1q_s64(src + i));
    int64_t l0 = vgetq_lane_s64(a, 0), l1 = vgetq_lane_s64(a, 1);
    r = l0 > r ? l0 : r;
    r = l1 > r ? l1 : r;
  }
  for (; i < n; ++i) {
    int64_t a = src[i] < 0 ? -src[i] : src[i];
    r = a > r ? a : r;
  }
  return r;
}

const Table neon{Isa::Neon, "neon", add_neon, sub_neon, axpy_neon, max_abs_neon};

}  // namespace

namespace detail {
const Table* neon_table() { return &neon; }
}  // namespace detail

}  // namespace padic::kernels

#else

namespace padic::kernels::detail {
const Table* neon_table() { return nullptr; }
}  // namespace padic::kernels::detail

#endif
