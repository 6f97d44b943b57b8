#pragma once

#include <set>

#include "haargreedy/haar.hpp"

namespace haargreedy {

/// The nested corner squares Delta_n = [0, 2^-n) x [0, 2^-n), n = 0..N.
std::vector<DyadicCube> nested_corner_chain(int depth);

/// f_N = 1 + sum_{n<N} sum_{j=1..3} h_{Delta_n}^{(j)} (d = 2). Telescopes to
/// 2^{2N} on Delta_N and 0 elsewhere; unit norm.
HaarExpansion build_f_n(int n);

/// f_N^eps = 1 + sum_{n<k} sum_j (h_{Delta_{2n+1}}^{(j)} + (1-eps) h_{Delta_{2n}}^{(j)}),
/// N = 2k even, 0 < eps < 1. The s = 1 divergence witness.
HaarExpansion build_f_n_eps(int n, const Rational& eps);

/// g_N^eps = t (1 + sum_{n<N} (h^{(1)} + h^{(2)} + (1-eps) h^{(3)})) + h_{Delta_N}^{(1)},
/// 0 < t < 1, 0 < eps < 1. The s = t divergence witness.
HaarExpansion build_g_n_eps(int n, const Rational& eps, const Rational& t);

/// prod_{n=1..N} (1 + u r_n) as a d = 1 expansion, 0 < u < 1; unit norm.
HaarExpansion build_rademacher_product(int n, const Rational& u);

/// 1 + u sum_{n=1..N} r_n as a d = 1 expansion: the forced weak greedy
/// approximant G_{N+1} of the Rademacher product for any weakness t > u.
HaarExpansion build_rademacher_partial_sum(int n, const Rational& u);

/// Exact || sum_{n=1..N} r_n ||_{L1} = 2^-N sum_j C(N,j) |N - 2j|.
Rational khinchine_l1(int n);

/// Exact inner product int_0^1 f w_A for the Walsh function w_A = prod_{n in A} r_n.
Rational walsh_inner_product(const HaarExpansion& f, const std::set<int>& indices);

}  // namespace haargreedy
