#pragma once

#include <cstddef>
#include <cstdint>

// Dense int64 kernels behind the exact phase accumulators.  Every kernel has a
// scalar reference; AVX2 (x86-64) and NEON (aarch64) variants are chosen at
// runtime.  The variants must agree bit-for-bit with the reference.
//
// PADIC_KERNELS=scalar|avx2|neon in the environment pins the choice.

namespace padic::kernels {

enum class Isa { Scalar, Avx2, Neon };

struct Table {
  Isa isa;
  const char* name;
  void (*add)(int64_t* dst, const int64_t* src, std::size_t n);
  void (*sub)(int64_t* dst, const int64_t* src, std::size_t n);
  // dst += w·src; exact only when |w| < 2^31 and |src[i]| < 2^31 (caller checks)
  void (*axpy_small)(int64_t* dst, const int64_t* src, std::size_t n, int64_t w);
  int64_t (*max_abs)(const int64_t* src, std::size_t n);
};

bool supported(Isa isa);
const Table& table(Isa isa);  // throws DomainError if not supported
const Table& active();
void set_active(Isa isa);

// dst += w·src choosing the fast path when the magnitudes allow it.
void axpy(int64_t* dst, const int64_t* src, std::size_t n, int64_t w, int64_t src_bound);

namespace detail {
extern const Table scalar_table;
const Table* avx2_table();  // nullptr when not compiled in
const Table* neon_table();
}  // namespace detail

}  // namespace padic::kernels
