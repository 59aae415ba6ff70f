#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "coefficients.hpp"
#include "partition.hpp"

namespace kf {

/* A positivity certificate is a tree over base triples with two
 * multiplicativity rules: componentwise addition (semigroup property)
 * and simultaneous conjugation of two of the three partitions. Every
 * node carries the triple it claims; verify() recomputes all of them. */

struct KroneckerTriple {
    Partition lam, mu, nu;
    bool operator==(const KroneckerTriple&) const = default;
};

enum class CertKind { OracleLeaf, AxiomLeaf, HookLeaf, TwoColumnLeaf, DeltaLeaf, Add, Transpose };
enum class TransposeVariant { MuNu, LamMu, LamNu };
enum class Slot { Lam, Mu, Nu };

struct CertNode;
using CertPtr = std::shared_ptr<const CertNode>;

struct CertNode {
    CertKind kind;
    KroneckerTriple triple;

    CertPtr left, right;  /* Add: both children; Transpose: left only */
    TransposeVariant variant{TransposeVariant::MuNu};

    std::string axiom_id;  /* AxiomLeaf */
    std::vector<int64_t> axiom_ints;
    Partition axiom_rho;

    int64_t d{0}, n{0}, k{0};  /* HookLeaf: mu = nu = d x n; TwoColumnLeaf: mu = nu = n x d */

    Slot slot{Slot::Mu};  /* DeltaLeaf: this slot holds the single row (|alpha|) */
    Partition alpha;
};

int64_t node_count(const CertPtr& cert);

/* ---- base-triple registry ---- */

/* The six partitions rho for which the limit coefficient a_rho vanishes. */
const std::vector<Partition>& x_table();
bool x_membership(const Partition& rho);

struct AxiomInstance {
    std::string id;
    std::vector<int64_t> ints;
    Partition rho;
    KroneckerTriple triple;
};

/* Finite positivity facts the certificate layer grounds out in, beyond
 * the hook and two-column closed forms:
 *   SQUARE(k)        (k x k, k x k, k x k), k >= 1
 *   HOOK7(j)         ((49-j, 1^j), 7x7, 7x7) for non-vanishing j
 *   NEARHOOK7(j,rho) ((49-j-|rho|, 1^j + rho), 7x7, 7x7), 1 <= |rho| <= 6
 *   STRETCH7(i,k)    (i(49-k, 1^k), 7x7i, 7x7i), i in {2,3},
 *                    k in {1,2,4,6,42,44,46,47}
 *   RHOCASE(rho)     (rho(49), 7x7, 7x7) for the 34 repair shapes of the
 *                    column decomposition
 * All have been checked once by the character oracle; the extended
 * self-test re-checks them (see audit below). */
class AxiomRegistry {
public:
    static const AxiomRegistry& instance();

    bool registered(const std::string& id, const std::vector<int64_t>& ints,
                    const Partition& rho) const;
    KroneckerTriple instantiate(const std::string& id, const std::vector<int64_t>& ints,
                                const Partition& rho) const;  /* throws domain_error */

    /* every registered instance with |lam| <= max_n (SQUARE truncated) */
    std::vector<AxiomInstance> enumerate(int64_t max_n) const;

    const std::vector<Partition>& rho_cases() const;  /* the 34-shape list */

private:
    AxiomRegistry();
    std::vector<Partition> rho_cases_;
};

/* ---- node constructors (validate parameters, derive the triple) ---- */

CertPtr oracle_leaf(const Partition& lam, const Partition& mu, const Partition& nu);
CertPtr axiom_leaf(const std::string& id, const std::vector<int64_t>& ints,
                   const Partition& rho);
CertPtr hook_leaf(int64_t d, int64_t n, int64_t k);
CertPtr two_column_leaf(int64_t n, int64_t d, int64_t k);
CertPtr delta_leaf(Slot slot, const Partition& alpha);
CertPtr add_cert(const CertPtr& l, const CertPtr& r);
CertPtr transpose_cert(const CertPtr& c, TransposeVariant v);

/* Recompute every triple bottom-up; oracle leaves are re-evaluated (budget
 * applies). Throws verify_error on any mismatch; returns the root triple. */
KroneckerTriple verify(const CertPtr& cert, Engine& eng);

/* cert-v1 JSON, schema tag at the root. from_json rebuilds the tree as
 * stored without trusting it; tampering surfaces in verify(). Both throw
 * verify_error on unreadable input. */
std::string cert_to_json(const CertPtr& cert);
CertPtr cert_from_json(const std::string& text);

/* ---- certificate builders ---- */

/* Admissibility of the near-hook (c^2 - j - |rho|, 1^j + rho) at square
 * side c >= 7, |rho| <= 6: j inside [0 or 1, c^2 - R_rho] minus the finite
 * exception lists. */
bool nh_admissible(int64_t c, int64_t j, const Partition& rho);

CertPtr hook_cert(int64_t d, int64_t n, int64_t k);

/* ((h^2-j-|rho|, 1^j+rho)(h w), h x w, h x w): climb squares 7 -> h, then widen. */
CertPtr square_climb(int64_t h, int64_t j, const Partition& rho);
CertPtr near_hook_cert(int64_t h, int64_t w, int64_t j, const Partition& rho);

/* One side-extension step for a set P of admissible leg lengths at side c:
 * new set at side c+1 is (P union (P + 2c+1)) clipped to the new range.
 * H1/H2 are the low/high exception offsets; used to check that inductive
 * coverage of the full range is preserved. */
std::set<int64_t> extension_step(const std::set<int64_t>& P, int64_t c, const Partition& rho,
                                 const std::set<int64_t>& H1, const std::set<int64_t>& H2);

/* mu = nu = r x c rectangle grown to R x C (R >= r, C >= c); lam gains
 * first-row cells only. */
CertPtr grow_rect(const CertPtr& cert, int64_t R, int64_t C);

/* ((ka - k(k-1)s, (ks)^{k-1}), a x k, a x k): s >= 1 squares k x k glued
 * in a row, padded to width a >= ks, then conjugated. */
CertPtr rect_block_cert(int64_t k, int64_t s, int64_t a);

/* ((i(m^2-k), i^k), m x im, m x im) for i >= 2, m >= 7, 0 <= k <= m^2-1. */
CertPtr stretched_hook_cert(int64_t i, int64_t m, int64_t k);

/* (rho(m*W), m x W, m x W) for rho with all rows even, length < m^2. */
CertPtr even_rows_cert(const Partition& rho, int64_t m);

/* (rho(nd), d x n, d x n) for d >= 7 when no column multiplicity is 1 at
 * heights {1,2,4,6} and none occur at {d^2-7, d^2-5, d^2-3, d^2-2};
 * needs n >= d * rho_1. */
CertPtr columns_rule_cert(int64_t d, int64_t n, const Partition& rho);

/* Column bookkeeping behind the main theorem: nu is cut into columns,
 * grouped as x_k full k x (k-1) blocks and y_k pairs, with single leftover
 * columns split between rho (heights 1,2,4,6) and xi (other heights), then
 * repaired so that rho avoids the vanishing table. */
struct Decomposition {
    std::vector<int64_t> x, y;  /* indexed by k = 2 .. len+1; [0],[1] unused */
    Partition rho, xi;
    int case_tag{1};   /* which repair applied */
    int64_t j2{0};     /* case 2: height of the column moved into rho */
    Partition eta;     /* case 2: rho before that move */
};
Decomposition decompose(const Partition& nu);

/* (nu(ab), a x b, a x b) for nu not in the exceptional table, under the
 * main theorem's hypotheses: a > 3 l^{3/2}, b >= 3 l^2, |nu| <= ab/6,
 * where l = max(len(nu)+1, 9). */
CertPtr main_cert(const Partition& nu, int64_t a, int64_t b);

/* lam as a signed combination of semigroup generators, all sharing the
 * rectangle d x (i d) family: witnesses saturation of the rectangular
 * semigroup. Requires d >= 7, d | |lam|, len(lam) <= d^2. */
struct SaturationTerm {
    CertPtr cert;
    mpz_class coeff;
};
std::vector<SaturationTerm> saturation_witness(const Partition& lam, int64_t d);
std::vector<mpz_class> saturation_resum(const std::vector<SaturationTerm>& terms);

}  // namespace kf
