#pragma once

#include <random>

#include "padic/schwartz.hpp"

namespace padic {

using Rng = std::mt19937_64;

// Small element of Q(ζ_8, ζ_{p^K}): a few monomials with coefficients in
// {−2..2}/{1,2,p}.
CyclotomicValue random_cyclotomic(Rng& rng, int p, int K, int terms = 2);

// Random table on the (M, m) window; each cell is nonzero with probability
// `density`.  The result is not necessarily canonical.
SchwartzFunction random_schwartz(Rng& rng, int p, int n, int M, int m, int K = 1, double density = 0.4);

// Random window with M, |m| ≤ 3 such that neither the window nor the dual
// window of the transform has more than `max_cells` cells.
// Random function on G in the coordinates (a, x, y) on the window (M, m),
// supported where a ∈ a_c(1 + ϖ^j𝒪), j ≤ m.  With K = 0 the values are rational.
SchwartzFunction random_group_function(Rng& rng, int p, int M, int m, const Rational& a_c, int j, int K = 0,
                                       double density = 0.4);

std::pair<int, int> random_window(Rng& rng, int p, int n, std::size_t max_cells);

}  // namespace padic
