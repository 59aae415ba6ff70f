#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "common.hpp"
#include "partition.hpp"
#include "symfun.hpp"

namespace kf {

struct MultiplicityResult {
    mpz_class value;
    std::string method;
    uint64_t classes_visited = 0;
};

/* Shared evaluation context: budget caps, worker count, and one character
 * memo per top-level shape family (so e.g. repeated rectangle arguments
 * reuse work across queries). If cache_dir is set, family memos are
 * loaded from and saved to KFCH1 snapshot files there. */
class Engine {
public:
    Budget budget;
    int threads = 1;
    std::string cache_dir;

    CharacterCache& family_cache(const Partition& family);
    void save_caches() const;

private:
    mutable std::mutex mu_;
    std::map<Partition, std::unique_ptr<CharacterCache>> caches_;
};

/* g(lam, mu, nu) by the class sum N!^-1 sum_rho |C_rho| chi chi chi,
 * with exact integer accumulation. Classes whose largest part exceeds
 * every argument's first-hook bound are never enumerated. */
MultiplicityResult kronecker(Engine& eng, const Partition& lam, const Partition& mu,
                             const Partition& nu);

/* c^lam_{mu nu} by direct enumeration of lattice skew fillings. */
MultiplicityResult lr_coefficient(Engine& eng, const Partition& lam, const Partition& mu,
                                  const Partition& nu);

/* c^{(d x n)}_{delta gamma} via the complement criterion:
 * 1 iff delta_i + gamma_{d+1-i} = n for all i. */
MultiplicityResult rect_complement_lr(Engine& eng, const Partition& delta,
                                      const Partition& gamma, int64_t d, int64_t n);

/* sum over theta |- k, tau |- N-k of c^lam_{theta tau} c^mu_{theta' tau};
 * equals g(lam,mu,(N-k,1^k)) + g(lam,mu,(N-k+1,1^{k-1})). */
mpz_class littlewood_hook_rhs(Engine& eng, const Partition& lam, const Partition& mu,
                              int64_t k);

/* a_lam(d[n]) = <s_lam, h_d[h_n]>, expanded in the power-sum basis. */
MultiplicityResult plethysm_a(Engine& eng, const Partition& lam, int64_t d, int64_t n);

/* Stable rectangular Kronecker values: a_rho(d) evaluated past the row
 * stabilization point, and its limit over d. */
MultiplicityResult limit_a_rho_d(Engine& eng, const Partition& rho, int64_t d);
MultiplicityResult limit_a_rho(Engine& eng, const Partition& rho);

}  // namespace kf
