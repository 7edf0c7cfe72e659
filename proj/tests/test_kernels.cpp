#include <random>
#include <vector>

#include "doctest.h"
#include "printers.hpp"
#include "padic/errors.hpp"
#include "padic/generators.hpp"
#include "padic/kernels.hpp"

using namespace padic;
namespace K = padic::kernels;

namespace {

std::vector<K::Isa> available() {
  std::vector<K::Isa> out;
  for (K::Isa isa : {K::Isa::Scalar, K::Isa::Avx2, K::Isa::Neon})
    if (K::supported(isa)) out.push_back(isa);
  return out;
}

std::vector<int64_t> random_array(std::mt19937_64& rng, std::size_t n, int64_t bound) {
  std::uniform_int_distribution<int64_t> d(-bound, bound);
  std::vector<int64_t> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

struct ActiveGuard {
  const K::Table& saved = K::active();
  ~ActiveGuard() { K::set_active(saved.isa); }
};

}  // namespace

TEST_CASE("every available kernel matches the scalar reference") {
  std::mt19937_64 rng(42);
  const auto& ref = K::table(K::Isa::Scalar);
  for (K::Isa isa : available()) {
    const auto& t = K::table(isa);
    CAPTURE(t.name);
    // lengths around the vector width, including tails
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 100, 243, 1029}) {
      auto a = random_array(rng, n, int64_t{1} << 60);
      auto b = random_array(rng, n, int64_t{1} << 60);
      auto x = a, y = a;
      ref.add(x.data(), b.data(), n);
      t.add(y.data(), b.data(), n);
      CHECK(x == y);
      ref.sub(x.data(), b.data(), n);
      t.sub(y.data(), b.data(), n);
      CHECK(x == y);
      CHECK(x == a);
      auto s = random_array(rng, n, (int64_t{1} << 31) - 1);
      for (int64_t w : {int64_t{0}, int64_t{1}, int64_t{-1}, int64_t{7}, (int64_t{1} << 31) - 1, -(int64_t{1} << 31) + 1}) {
        auto u = random_array(rng, n, int64_t{1} << 40), v = u;
        ref.axpy_small(u.data(), s.data(), n, w);
        t.axpy_small(v.data(), s.data(), n, w);
        CHECK(u == v);
      }
      CHECK(ref.max_abs(a.data(), n) == t.max_abs(a.data(), n));
    }
  }
}

TEST_CASE("axpy falls back to exact scalar products when operands are large") {
  std::mt19937_64 rng(1);
  for (K::Isa isa : available()) {
    ActiveGuard guard;
    K::set_active(isa);
    auto src = random_array(rng, 37, int64_t{1} << 40);
    auto dst = random_array(rng, 37, int64_t{1} << 40);
    auto expect = dst;
    const int64_t w = 3;
    for (std::size_t i = 0; i < expect.size(); ++i) expect[i] += w * src[i];
    K::axpy(dst.data(), src.data(), dst.size(), w, int64_t{1} << 40);
    CHECK(dst == expect);
  }
}

TEST_CASE("cyclotomic results do not depend on the kernel choice") {
  for (K::Isa isa : available()) {
    ActiveGuard guard;
    Rng rng(9);
    std::vector<CyclotomicValue> ref, got;
    for (int t = 0; t < 40; ++t) {
      auto x = random_cyclotomic(rng, 7, 2, 6), y = random_cyclotomic(rng, 7, 2, 6);
      K::set_active(K::Isa::Scalar);
      ref.push_back(x * y + x);
      K::set_active(isa);
      got.push_back(x * y + x);
    }
    CHECK(ref == got);
    // a transform through the accumulator hot loop
    auto f = random_schwartz(rng, 5, 2, 1, 1, 1, 0.7);
    K::set_active(K::Isa::Scalar);
    auto F0 = fourier(f);
    K::set_active(isa);
    CHECK(fourier(f) == F0);
  }
}

TEST_CASE("unavailable ISA is reported") {
  for (K::Isa isa : {K::Isa::Avx2, K::Isa::Neon})
    if (!K::supported(isa)) CHECK_THROWS_AS(K::table(isa), DomainError);
  CHECK(K::supported(K::Isa::Scalar));
}
