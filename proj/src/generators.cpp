#include "padic/generators.hpp"

namespace padic {

CyclotomicValue random_cyclotomic(Rng& rng, int p, int K, int terms) {
  std::uniform_int_distribution<int> coef(-2, 2), a(0, 7), dsel(0, 2);
  std::uniform_int_distribution<int64_t> j(0, ipow(p, K) - 1);
  CyclotomicValue v;
  for (int t = 0; t < terms; ++t) {
    const int64_t den[3] = {1, 2, p};
    Rational c(coef(rng), den[dsel(rng)]);
    v += CyclotomicValue::monomial(p, K, (t == 0 ? 0 : a(rng)), j(rng), c);
  }
  return v;
}

SchwartzFunction random_schwartz(Rng& rng, int p, int n, int M, int m, int K, double density) {
  SchwartzFunction f(p, n, M, m);
  std::bernoulli_distribution live(density);
  for (std::size_t i = 0; i < f.cells(); ++i)
    if (live(rng)) f.set(i, random_cyclotomic(rng, p, K));
  return f;
}

SchwartzFunction random_group_function(Rng& rng, int p, int M, int m, const Rational& a_c, int j, int K,
                                       double density) {
  SchwartzFunction f(p, 3, M, m);
  std::bernoulli_distribution live(density);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (std::size_t i = 0; i < f.cells(); ++i) {
    const Rational a = f.point(i)[0];
    if (a.is_zero()) continue;
    const Rational d = a / a_c - Rational(1);
    if (!d.is_zero() && valuation(d, p) < j) continue;
    if (!live(rng)) continue;
    if (K > 0) {
      f.set(i, random_cyclotomic(rng, p, K));
    } else {
      const int num = coef(rng), den = 1 + (coef(rng) & 1);
      f.set(i, CyclotomicValue(Rational(num, den)));
    }
  }
  return f;
}

std::pair<int, int> random_window(Rng& rng, int p, int n, std::size_t max_cells) {
  std::uniform_int_distribution<int> Md(0, 3), md(-3, 3);
  for (;;) {
    int M = Md(rng), m = md(rng);
    if (m < -M) continue;
    // the transform lives on the window (max(m, 0), M)
    double cells = 1;
    for (int i = 0; i < n; ++i) cells *= static_cast<double>(ipow(p, M + std::max(m, 0)));
    if (cells <= static_cast<double>(max_cells)) return {M, m};
  }
}

}  // namespace padic
