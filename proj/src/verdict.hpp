#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "certificates.hpp"
#include "coefficients.hpp"
#include "partition.hpp"

namespace kf {

/* Case analysis for a proposed occurrence obstruction (lam, n, d, m):
 * every outcome except KroneckerPositive concludes that the multiplicity
 * the obstruction would need is zero; KroneckerPositive refutes the
 * vanishing premise itself, with a certificate when one can be built. */
enum class Outcome {
    HypothesisNotMet,
    ZeroByShape,
    ZeroByDegreeBound,
    ZeroByExceptional,
    KroneckerPositive,
};

const char* outcome_name(Outcome o);

struct VerdictStep {
    std::string rule;
    std::vector<std::pair<std::string, std::string>> params;
};

struct Verdict {
    Outcome outcome;
    std::vector<VerdictStep> trace;
    CertPtr cert;  /* only for KroneckerPositive, may still be null */
};

/* true iff the row excess and length fit below the occurrence thresholds:
 * |lam minus its first row| <= m*d and length(lam) <= m^2 */
bool shape_filter(const Partition& lam, int64_t m, int64_t d);

/* true iff d <= n/m, the regime where the degree bound forces the padded
 * multiplicity below the rectangular Kronecker coefficient; with an engine
 * the inequality itself is recomputed when the budget allows */
bool degree_bound_check(const Partition& lam, int64_t m, int64_t n, int64_t d,
                        Engine* cross_check = nullptr);

Verdict main_verdict(const Partition& lam, int64_t n, int64_t d, int64_t m);

std::string verdict_to_json(const Verdict& v);

enum class TriState { Yes, No, Unknown };

/* whether g(rho(nd), n x d, n x d) already equals its limit value; the _d
 * variant compares against the d-row stable value instead */
TriState stable_range_member(Engine& eng, const Partition& rho, int64_t n, int64_t d);
TriState stable_range_member_d(Engine& eng, const Partition& rho, int64_t n, int64_t d);

/* asserts the padded multiplicity vanishes for every table shape that fits
 * in nd boxes; returns the shapes actually checked */
std::vector<Partition> exceptional_vanishing_check(Engine& eng, int64_t d, int64_t n);

}  // namespace kf
