#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "partition.hpp"

namespace kf {

/* Coefficients of prod_{i=2}^{d} (1 + q^{2i-1}), indexed by exponent;
 * size d*d, top exponent d*d-1. These count partitions into distinct
 * odd parts drawn from {3, 5, ..., 2d-1}. */
std::vector<mpz_class> hook_genfun(int64_t d);

/* g((nd-k, 1^k), d x n, d x n) in closed form: the exponent-k coefficient
 * of hook_genfun(min(d, n)). Defined for 0 <= k <= nd-1. */
mpz_class hook_kron(int64_t d, int64_t n, int64_t k);

/* All k in [0, d*d-1] whose hook multiplicity vanishes, ascending. */
std::vector<int64_t> vanishing_set(int64_t d);

/* Number of self-conjugate partitions of k that fit inside d x n,
 * counted directly as subsets of distinct odd parts <= 2*min(d,n)-1. */
mpz_class self_conjugate_count(int64_t k, int64_t d, int64_t n);

/* For d >= 27: the coefficient window [26, d*d-26] of
 * prod_{i=1}^{d} (1 + q^{2i-1}) is symmetric and strictly increasing up
 * to its midpoint. */
bool unimodality_check(int64_t d);

/* Two-row shape against two different rectangles a x b and c x d with
 * ab = cd = N: zero unless k = N/2, where the answer is 1 exactly when
 * the width gap divides the larger width. */
mpz_class two_rect_two_row(int64_t a, int64_t b, int64_t c, int64_t d, int64_t k);

/* Two-column shape (2^k, 1^{nd-2k}) against a pair of n x d rectangles,
 * n != d: zero unless 2k = nd, where the answer is 1 exactly when
 * |d - n| divides max(n, d). */
mpz_class two_column(int64_t n, int64_t d, int64_t k);

}  // namespace kf
