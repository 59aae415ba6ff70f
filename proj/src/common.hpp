#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace kf {

// Domain errors: bad inputs, violated preconditions, out-of-range parameters.
// Map to CLI exit code 1.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Budget refusals: the request is well-formed but larger than the configured
// oracle bound. Distinct type so callers can lift the budget and retry.
// Map to CLI exit code 2.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Certificate or witness verification failures. Map to CLI exit code 3.
struct verify_error : std::runtime_error {
    explicit verify_error(const std::string& what) : std::runtime_error(what) {}
};

// Parts and sizes are int64 with checked arithmetic. Values (characters,
// multiplicities, polynomial coefficients) are GMP integers/rationals.
inline int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw domain_error("integer overflow in addition");
    return r;
}

inline int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw domain_error("integer overflow in multiplication");
    return r;
}

// Oracle budgets. Defaults refuse class-sum Kronecker evaluation above
// N = 28 and plethysm expansion above d*n = 40; force lifts both.
struct Budget {
    int64_t kron_max_n = 28;
    int64_t pleth_max_dn = 40;
    bool force = false;

    bool allows_kron(int64_t n) const { return force || n <= kron_max_n; }
    bool allows_pleth(int64_t dn) const { return force || dn <= pleth_max_dn; }
};

}  // namespace kf
