#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <vector>

#include "partition.hpp"

namespace kf {

// A conjugacy class of S_N, represented by its cycle type.
using CycleType = Partition;

// Enumerates partitions of N in reverse lexicographic order: (N) first,
// (1^N) last. Optional caps on the largest part and the number of parts
// (pass -1 for unrestricted). The callback form streams without
// materializing; the vector form collects.
void partitions_for_each(int64_t N, int64_t max_part, int64_t max_length,
                         const std::function<void(const Partition&)>& fn);
std::vector<Partition> partitions_of(int64_t N, int64_t max_part = -1,
                                     int64_t max_length = -1);

// z_rho = prod_i i^{m_i} m_i!
mpz_class centralizer_size(const CycleType& rho);
mpz_class factorial(int64_t n);

// Memo table for the border-strip character recursion, scoped to one
// top-level query family. Keys are interned (sub-shape, class-suffix)
// pairs. Readers may run concurrently; writers are serialized internally.
class CharacterCache {
public:
    CharacterCache();
    ~CharacterCache();
    CharacterCache(const CharacterCache&) = delete;
    CharacterCache& operator=(const CharacterCache&) = delete;

    uint64_t hits() const;
    uint64_t misses() const;
    uint64_t entries() const;
    void clear();

    // Versioned binary snapshot, magic "KFCH1", little-endian lengths.
    void dump(std::ostream& os) const;
    bool load(std::istream& is);

    struct Impl;
    Impl& impl() const { return *impl_; }

private:
    std::unique_ptr<Impl> impl_;
};

// Irreducible S_N character chi_lambda on class rho, via border-strip
// removal over the class parts in decreasing order.
mpz_class character(const Partition& lam, const CycleType& rho, CharacterCache& cache);
mpz_class character(const Partition& lam, const CycleType& rho);
// Memoization disabled; exponential on purpose. Used by tests to confirm
// cache transparency.
mpz_class character_nomemo(const Partition& lam, const CycleType& rho);

// Sparse symmetric function in the power-sum basis: map from index
// partition to rational coefficient, homogeneous of the stated degree.
struct PowerSumElement {
    std::map<Partition, mpq_class> terms;
    int64_t degree = 0;

    void insert_term(const Partition& idx, const mpq_class& c);
    bool operator==(const PowerSumElement& other) const = default;
};

PowerSumElement powersum_product(const PowerSumElement& f, const PowerSumElement& g);
// p_r applied plethystically: every index part j becomes j*r.
PowerSumElement plethystic_substitute(const PowerSumElement& f, int64_t r);
// h_n = sum_{sigma |- n} z_sigma^{-1} p_sigma
PowerSumElement complete_homogeneous(int64_t n);
// <f, s_lam> = sum_rho coeff_f(rho) * chi_lam(rho)
mpq_class schur_coefficient(const PowerSumElement& f, const Partition& lam,
                            CharacterCache& cache);
mpq_class schur_coefficient(const PowerSumElement& f, const Partition& lam);

}  // namespace kf
