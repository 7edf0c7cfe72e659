#include "padic/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "padic/errors.hpp"

namespace padic::kernels {

namespace {

void add_scalar(int64_t* dst, const int64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += src[i];
}

void sub_scalar(int64_t* dst, const int64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] -= src[i];
}

void axpy_scalar(int64_t* dst, const int64_t* src, std::size_t n, int64_t w) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += w * src[i];
}

int64_t max_abs_scalar(const int64_t* src, std::size_t n) {
  int64_t m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    int64_t a = src[i] < 0 ? -src[i] : src[i];
    if (a > m) m = a;
  }
  return m;
}

const Table* pick_default() {
  if (const char* env = std::getenv("PADIC_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return &detail::scalar_table;
    if (std::strcmp(env, "avx2") == 0 && detail::avx2_table()) return detail::avx2_table();
    if (std::strcmp(env, "neon") == 0 && detail::neon_table()) return detail::neon_table();
  }
  if (detail::avx2_table()) return detail::avx2_table();
  if (detail::neon_table()) return detail::neon_table();
  return &detail::scalar_table;
}

const Table*& current() {
  static const Table* t = pick_default();
  return t;
}

}  // namespace

namespace detail {
const Table scalar_table{Isa::Scalar, "scalar", add_scalar, sub_scalar, axpy_scalar, max_abs_scalar};
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2: return detail::avx2_table() != nullptr;
    case Isa::Neon: return detail::neon_table() != nullptr;
  }
  return false;
}

const Table& table(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return detail::scalar_table;
    case Isa::Avx2:
      if (auto* t = detail::avx2_table()) return *t;
      break;
    case Isa::Neon:
      if (auto* t = detail::neon_table()) return *t;
      break;
  }
  throw DomainError("kernel ISA not available on this machine");
}

const Table& active() { return *current(); }

void set_active(Isa isa) { current() = &table(isa); }

void axpy(int64_t* dst, const int64_t* src, std::size_t n, int64_t w, int64_t src_bound) {
  constexpr int64_t lim = int64_t{1} << 31;
  if (w == 1) return active().add(dst, src, n);
  if (w == -1) return active().sub(dst, src, n);
  if (w < lim && w > -lim && src_bound < lim) return active().axpy_small(dst, src, n, w);
  axpy_scalar(dst, src, n, w);
}

}  // namespace padic::kernels
