#include "verdict.hpp"

#include <json.hpp>

namespace kf {

using nlohmann::json;

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::HypothesisNotMet: return "HypothesisNotMet";
        case Outcome::ZeroByShape: return "ZeroByShape";
        case Outcome::ZeroByDegreeBound: return "ZeroByDegreeBound";
        case Outcome::ZeroByExceptional: return "ZeroByExceptional";
        case Outcome::KroneckerPositive: return "KroneckerPositive";
    }
    return "?";
}

bool shape_filter(const Partition& lam, int64_t m, int64_t d) {
    require_partition(lam, "shape_filter");
    if (m < 1 || d < 1) throw domain_error("shape_filter: m and d must be positive");
    const Partition bar = strip_first_row(lam);
    return part_size(bar) <= checked_mul(m, d) && part_length(lam) <= checked_mul(m, m);
}

bool degree_bound_check(const Partition& lam, int64_t m, int64_t n, int64_t d,
                        Engine* cross_check) {
    require_partition(lam, "degree_bound_check");
    if (m < 1 || n < 1 || d < 1)
        throw domain_error("degree_bound_check: m, n, d must be positive");
    if (part_size(lam) != checked_mul(n, d))
        throw domain_error("degree_bound_check: |lam| != n*d");
    const Partition bar = strip_first_row(lam);
    if (part_size(bar) > checked_mul(m, d))
        throw domain_error("degree_bound_check: row excess above m*d");
    const bool below = checked_mul(d, m) <= n;
    if (below && cross_check && cross_check->budget.allows_kron(n * d) &&
        cross_check->budget.allows_pleth(n * d)) {
        const mpz_class a = plethysm_a(*cross_check, lam, d, n).value;
        const mpz_class g = kronecker(*cross_check, lam, rect(n, d), rect(n, d)).value;
        if (a > g)
            throw verify_error("degree_bound_check: padded multiplicity exceeds the "
                               "rectangular coefficient below the degree bound");
    }
    return below;
}

namespace {

std::string str(int64_t v) { return std::to_string(v); }

}  // namespace

Verdict main_verdict(const Partition& lam, int64_t n, int64_t d, int64_t m) {
    require_partition(lam, "main_verdict");
    if (n < 1 || d < 1 || m < 1) throw domain_error("main_verdict: n, d, m must be positive");
    if (part_size(lam) != checked_mul(n, d)) throw domain_error("main_verdict: |lam| != n*d");

    Verdict v;
    const int64_t m2 = checked_mul(m, m);
    const int64_t threshold = checked_mul(3, checked_mul(m2, m2));
    v.trace.push_back({"hypothesis-gate",
                       {{"n", str(n)}, {"m", str(m)}, {"threshold", str(threshold)}}});
    if (n <= threshold) {
        v.outcome = Outcome::HypothesisNotMet;
        return v;
    }

    const Partition bar = strip_first_row(lam);
    v.trace.push_back({"shape-filter",
                       {{"row_excess", str(part_size(bar))},
                        {"row_excess_cap", str(checked_mul(m, d))},
                        {"length", str(part_length(lam))},
                        {"length_cap", str(m2)}}});
    if (!shape_filter(lam, m, d)) {
        v.outcome = Outcome::ZeroByShape;
        return v;
    }

    v.trace.push_back({"degree-bound", {{"d", str(d)}, {"n", str(n)}, {"m", str(m)}}});
    if (checked_mul(d, m) <= n) {
        v.outcome = Outcome::ZeroByDegreeBound;
        return v;
    }

    v.trace.push_back({"exceptional-table", {{"rho", partition_to_string(bar)}}});
    if (!bar.empty() && x_membership(bar)) {
        v.outcome = Outcome::ZeroByExceptional;
        return v;
    }

    v.outcome = Outcome::KroneckerPositive;
    if (bar.empty()) {
        v.cert = hook_leaf(n, d, 0);
    } else {
        try {
            v.cert = main_cert(bar, n, d);
        } catch (const domain_error&) {
            try {
                v.cert = transpose_cert(main_cert(bar, d, n), TransposeVariant::MuNu);
            } catch (const domain_error&) {
                v.cert = nullptr;
            }
        }
    }
    v.trace.push_back({"positivity",
                       {{"rho", partition_to_string(bar)},
                        {"rectangle", str(n) + "x" + str(d)},
                        {"certificate", v.cert ? "attached" : "none"}}});
    return v;
}

std::string verdict_to_json(const Verdict& v) {
    json steps = json::array();
    for (const auto& s : v.trace) {
        json params = json::object();
        for (const auto& [k, val] : s.params) params[k] = val;
        steps.push_back({{"rule", s.rule}, {"params", params}});
    }
    json j = {{"outcome", outcome_name(v.outcome)}, {"trace", steps}};
    return j.dump();
}

namespace {

TriState stable_compare(Engine& eng, const Partition& rho, int64_t n, int64_t d,
                        bool against_limit) {
    require_partition(rho, "stable_range_member");
    if (n < 1 || d < 1) throw domain_error("stable_range_member: n, d must be positive");
    try {
        const int64_t N = checked_mul(n, d);
        mpz_class g = 0;
        const int64_t rho1 = rho.empty() ? 0 : rho[0];
        if (N - part_size(rho) >= rho1)
            g = kronecker(eng, pad(rho, N), rect(n, d), rect(n, d)).value;
        const mpz_class a = against_limit ? limit_a_rho(eng, rho).value
                                          : limit_a_rho_d(eng, rho, d).value;
        return g == a ? TriState::Yes : TriState::No;
    } catch (const budget_error&) {
        return TriState::Unknown;
    }
}

}  // namespace

TriState stable_range_member(Engine& eng, const Partition& rho, int64_t n, int64_t d) {
    return stable_compare(eng, rho, n, d, true);
}

TriState stable_range_member_d(Engine& eng, const Partition& rho, int64_t n, int64_t d) {
    return stable_compare(eng, rho, n, d, false);
}

std::vector<Partition> exceptional_vanishing_check(Engine& eng, int64_t d, int64_t n) {
    if (n < 1 || d < 1)
        throw domain_error("exceptional_vanishing_check: n, d must be positive");
    const int64_t N = checked_mul(n, d);
    std::vector<Partition> checked;
    for (const Partition& rho : x_table()) {
        if (N - part_size(rho) < rho[0]) continue;
        const mpz_class val = plethysm_a(eng, pad(rho, N), d, n).value;
        if (val != 0)
            throw verify_error("exceptional_vanishing_check: nonzero padded multiplicity at " +
                               partition_to_string(rho));
        checked.push_back(rho);
    }
    return checked;
}

}  // namespace kf
