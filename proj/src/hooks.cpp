#include "hooks.hpp"

#include <algorithm>
#include <cassert>

#include "common.hpp"

namespace kf {

std::vector<mpz_class> hook_genfun(int64_t d) {
    if (d < 1) throw domain_error("hook_genfun: d must be >= 1");
    std::vector<mpz_class> b(static_cast<size_t>(checked_mul(d, d)), mpz_class(0));
    b[0] = 1;
    for (int64_t i = 2; i <= d; ++i) {
        const int64_t step = 2 * i - 1;
        for (int64_t k = static_cast<int64_t>(b.size()) - 1; k >= step; --k)
            b[static_cast<size_t>(k)] += b[static_cast<size_t>(k - step)];
    }
    return b;
}

mpz_class hook_kron(int64_t d, int64_t n, int64_t k) {
    if (d < 1 || n < 1) throw domain_error("hook_kron: rectangle sides must be >= 1");
    if (k < 0 || k > checked_mul(d, n) - 1)
        throw domain_error("hook_kron: leg length outside [0, dn-1]");
    const int64_t m = std::min(d, n);
    if (k >= m * m) return 0;  /* hook taller than the shape bound */
    return hook_genfun(m)[static_cast<size_t>(k)];
}

std::vector<int64_t> vanishing_set(int64_t d) {
    const std::vector<mpz_class> b = hook_genfun(d);
    std::vector<int64_t> zeros;
    for (size_t k = 0; k < b.size(); ++k)
        if (b[k] == 0) zeros.push_back(static_cast<int64_t>(k));
    return zeros;
}

mpz_class self_conjugate_count(int64_t k, int64_t d, int64_t n) {
    if (d < 1 || n < 1) throw domain_error("self_conjugate_count: rectangle sides must be >= 1");
    if (k < 0) throw domain_error("self_conjugate_count: negative size");
    const int64_t m = std::min(d, n);
    if (k > m * m) return 0;
    /* diagonal hooks give distinct odd parts <= 2m-1; count subsets by DP */
    std::vector<mpz_class> c(static_cast<size_t>(k) + 1, mpz_class(0));
    c[0] = 1;
    for (int64_t i = 1; i <= m; ++i) {
        const int64_t step = 2 * i - 1;
        for (int64_t t = k; t >= step; --t)
            c[static_cast<size_t>(t)] += c[static_cast<size_t>(t - step)];
    }
    return c[static_cast<size_t>(k)];
}

bool unimodality_check(int64_t d) {
    if (d < 27) throw domain_error("unimodality_check: window needs d >= 27");
    const int64_t deg = checked_mul(d, d);
    std::vector<mpz_class> b(static_cast<size_t>(deg) + 1, mpz_class(0));
    b[0] = 1;
    for (int64_t i = 1; i <= d; ++i) {
        const int64_t step = 2 * i - 1;
        for (int64_t k = deg; k >= step; --k)
            b[static_cast<size_t>(k)] += b[static_cast<size_t>(k - step)];
    }
    const int64_t lo = 26, hi = deg - 26;
    for (int64_t k = lo; k <= hi; ++k)
        if (b[static_cast<size_t>(k)] != b[static_cast<size_t>(deg - k)]) return false;
    for (int64_t k = lo; k + 1 <= deg / 2; ++k)
        if (!(b[static_cast<size_t>(k)] < b[static_cast<size_t>(k + 1)])) return false;
    return true;
}

mpz_class two_rect_two_row(int64_t a, int64_t b, int64_t c, int64_t d, int64_t k) {
    if (a < 1 || b < 1 || c < 1 || d < 1)
        throw domain_error("two_rect_two_row: rectangle sides must be >= 1");
    const int64_t N = checked_mul(a, b);
    if (checked_mul(c, d) != N) throw domain_error("two_rect_two_row: rectangles differ in size");
    if (a == c) throw domain_error("two_rect_two_row: rectangles must be distinct");
    if (k < 0 || 2 * k > N) throw domain_error("two_rect_two_row: row length out of range");
    if (2 * k < N) return 0;
    int64_t wb = b, wd = d;
    if (wb > wd) std::swap(wb, wd);
    assert(wb < wd);
    return (wd % (wd - wb) == 0) ? 1 : 0;
}

mpz_class two_column(int64_t n, int64_t d, int64_t k) {
    if (n < 1 || d < 1) throw domain_error("two_column: rectangle sides must be >= 1");
    if (n == d) throw domain_error("two_column: rectangles must be distinct");
    const int64_t N = checked_mul(n, d);
    if (k < 0 || 2 * k > N) throw domain_error("two_column: column height out of range");
    if (2 * k < N) return 0;
    const int64_t lo = std::min(n, d), hi = std::max(n, d);
    return (hi % (hi - lo) == 0) ? 1 : 0;
}

}  // namespace kf
