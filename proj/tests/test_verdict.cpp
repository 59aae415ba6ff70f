#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "symfun.hpp"
#include "verdict.hpp"

using namespace kf;

TEST_CASE("shape filter") {
    CHECK(shape_filter({10, 1}, 2, 3));
    CHECK_FALSE(shape_filter({3, 1, 1, 1, 1, 1}, 2, 1));  /* row excess 5 > 2 */
    CHECK_FALSE(shape_filter({5, 5}, 1, 4));              /* row excess 5 > 4 */
    CHECK_FALSE(shape_filter({2, 1, 1}, 1, 4));           /* length 3 > 1 */
    CHECK(shape_filter({}, 1, 1));
    CHECK(shape_filter({7}, 1, 1));
    CHECK_THROWS_AS(shape_filter({3, 1}, 0, 2), domain_error);
    CHECK_THROWS_AS(shape_filter({1, 3}, 2, 2), domain_error);
}

TEST_CASE("degree bound check") {
    Engine eng;
    CHECK(degree_bound_check({10, 2}, 2, 6, 2));
    CHECK(degree_bound_check({10, 2}, 2, 6, 2, &eng));  /* recomputed inequality holds */
    CHECK(degree_bound_check({12}, 2, 6, 2, &eng));
    CHECK_FALSE(degree_bound_check({22, 2}, 2, 6, 4));
    CHECK_FALSE(degree_bound_check({22, 2}, 2, 6, 4, &eng));  /* no recompute above bound */
    CHECK(degree_bound_check({6, 6}, 3, 6, 2, &eng));  /* boundary d*m == n */

    CHECK_THROWS_AS(degree_bound_check({6, 6}, 1, 6, 2), domain_error);   /* excess 6 > 2 */
    CHECK_THROWS_AS(degree_bound_check({10, 2}, 2, 5, 2), domain_error);  /* size 12 != 10 */
    CHECK_THROWS_AS(degree_bound_check({4}, 0, 2, 2), domain_error);

    /* the inequality direction: padded multiplicity never exceeds the
       rectangular coefficient once d*m <= n; sweep the small grid */
    for (int64_t n = 4; n <= 6; ++n)
        for (int64_t d = 1; d * d <= n && n * d <= 18; ++d)
            partitions_for_each(n * d, -1, -1, [&](const Partition& lam) {
                const Partition bar = strip_first_row(lam);
                if (part_size(bar) > d) return;  /* m = 1 */
                CHECK(degree_bound_check(lam, 1, n, d, &eng));
            });
}

TEST_CASE("main verdict outcomes") {
    Engine eng;

    Verdict gate = main_verdict({3}, 3, 1, 1);  /* n at the threshold exactly */
    CHECK(gate.outcome == Outcome::HypothesisNotMet);
    REQUIRE(gate.trace.size() == 1);
    CHECK(gate.trace[0].rule == "hypothesis-gate");

    Verdict shape = main_verdict({1, 1, 1, 1}, 4, 1, 1);  /* length 4 > 1 */
    CHECK(shape.outcome == Outcome::ZeroByShape);
    CHECK(shape.trace.back().rule == "shape-filter");

    Verdict excess = main_verdict({4, 4}, 4, 2, 1);  /* row excess 4 > 2 */
    CHECK(excess.outcome == Outcome::ZeroByShape);

    Verdict deg = main_verdict({8}, 4, 2, 1);
    CHECK(deg.outcome == Outcome::ZeroByDegreeBound);
    CHECK(deg.trace.back().rule == "degree-bound");

    Verdict exc = main_verdict(pad({2, 1}, 49 * 25), 49, 25, 2);
    CHECK(exc.outcome == Outcome::ZeroByExceptional);
    CHECK(exc.trace.back().rule == "exceptional-table");
    CHECK_FALSE(exc.cert);

    /* positive with a hook certificate: single-row lam */
    Verdict row = main_verdict({20}, 4, 5, 1);
    CHECK(row.outcome == Outcome::KroneckerPositive);
    REQUIRE(row.cert);
    KroneckerTriple t = verify(row.cert, eng);
    CHECK(t.lam == Partition{20});
    CHECK(t.mu == rect(4, 5));
    CHECK(kronecker(eng, t.lam, t.mu, t.nu).value > 0);

    CHECK_THROWS_AS(main_verdict({3, 1}, 2, 2, 0), domain_error);
    CHECK_THROWS_AS(main_verdict({3, 1}, 2, 3, 1), domain_error);  /* size mismatch */
}

TEST_CASE("main verdict attaches deep certificates") {
    Engine eng;

    /* direct route: the rectangle is wide enough as given */
    Verdict direct = main_verdict(pad({2}, 82 * 243), 82, 243, 2);
    CHECK(direct.outcome == Outcome::KroneckerPositive);
    REQUIRE(direct.cert);
    KroneckerTriple dt = verify(direct.cert, eng);
    CHECK(dt.lam == pad({2}, 82 * 243));
    CHECK(dt.mu == rect(82, 243));
    CHECK(dt.nu == rect(82, 243));
    CHECK(direct.trace.back().params.back().second == "attached");

    /* transposed route: 243 x 122 fails the aspect test, 122 x 243 works */
    Verdict flipped = main_verdict(pad({2}, 243 * 122), 243, 122, 2);
    CHECK(flipped.outcome == Outcome::KroneckerPositive);
    REQUIRE(flipped.cert);
    CHECK(flipped.cert->kind == CertKind::Transpose);
    KroneckerTriple ft = verify(flipped.cert, eng);
    CHECK(ft.lam == pad({2}, 243 * 122));
    CHECK(ft.mu == rect(243, 122));

    /* too square for either orientation: positive verdict, no certificate */
    Verdict none = main_verdict(pad({2}, 49 * 25), 49, 25, 2);
    CHECK(none.outcome == Outcome::KroneckerPositive);
    CHECK_FALSE(none.cert);
    CHECK(none.trace.back().params.back().second == "none");
}

TEST_CASE("verdict grid agrees with the gate definitions") {
    Engine eng;
    int64_t positives = 0;
    for (int64_t m : {1, 2}) {
        const int64_t m2 = m * m;
        const int64_t threshold = 3 * m2 * m2;
        const int64_t n_cap = (m == 1) ? threshold + 2 : 10;
        for (int64_t n = 1; n <= n_cap; ++n)
            for (int64_t d = 1; d <= 6; ++d) {
                if (n * d > 22) continue;
                partitions_for_each(n * d, -1, -1, [&](const Partition& lam) {
                    const Verdict v = main_verdict(lam, n, d, m);
                    const Partition bar = strip_first_row(lam);
                    Outcome want;
                    if (n <= threshold) want = Outcome::HypothesisNotMet;
                    else if (!shape_filter(lam, m, d)) want = Outcome::ZeroByShape;
                    else if (d * m <= n) want = Outcome::ZeroByDegreeBound;
                    else if (!bar.empty() && x_membership(bar)) want = Outcome::ZeroByExceptional;
                    else want = Outcome::KroneckerPositive;
                    CHECK(v.outcome == want);
                    if (v.outcome == Outcome::KroneckerPositive) {
                        ++positives;
                        CHECK(kronecker(eng, lam, rect(n, d), rect(n, d)).value > 0);
                        if (v.cert) {
                            const KroneckerTriple t = verify(v.cert, eng);
                            CHECK(t.lam == lam);
                            CHECK(t.mu == rect(n, d));
                        }
                    }
                });
            }
    }
    CHECK(positives > 0);
}

TEST_CASE("padded multiplicity stays below the rectangular coefficient") {
    Engine eng;
    /* once n reaches |rho| the padded column-stable value is a lower bound
       for nothing, but the rectangular coefficient dominates it at every
       later rectangle; check g >= a on a small grid */
    for (const Partition& rho :
         {Partition{1}, Partition{2}, Partition{1, 1}, Partition{2, 1}}) {
        for (int64_t n = part_length(rho) ? part_size(rho) : 1; n <= 5; ++n)
            for (int64_t d = 1; d <= 4; ++d) {
                const int64_t N = n * d;
                if (N - part_size(rho) < rho[0]) continue;
                const Partition lam = pad(rho, N);
                const mpz_class g = kronecker(eng, lam, rect(n, d), rect(n, d)).value;
                const mpz_class a = plethysm_a(eng, lam, d, n).value;
                CHECK(g >= a);
            }
    }
}

TEST_CASE("stable range membership") {
    Engine eng;
    CHECK(stable_range_member(eng, {1}, 2, 2) == TriState::Yes);
    CHECK(stable_range_member(eng, {2, 2}, 4, 4) == TriState::Yes);
    CHECK(stable_range_member(eng, {2}, 2, 2) == TriState::Yes);
    CHECK(stable_range_member(eng, {2}, 1, 2) == TriState::No);
    CHECK(stable_range_member(eng, {6}, 2, 6) == TriState::Unknown);  /* limit above budget */

    CHECK(stable_range_member_d(eng, {2}, 2, 3) == TriState::Yes);
    CHECK(stable_range_member_d(eng, {2}, 4, 3) == TriState::Yes);
    CHECK(stable_range_member_d(eng, {2}, 1, 3) == TriState::No);
    CHECK(stable_range_member_d(eng, {6}, 6, 2) == TriState::Yes);
    CHECK(stable_range_member_d(eng, {6}, 5, 2) == TriState::No);
    CHECK(stable_range_member_d(eng, {6}, 6, 6) == TriState::Unknown);

    CHECK_THROWS_AS(stable_range_member(eng, {1}, 0, 2), domain_error);
}

TEST_CASE("exceptional vanishing sweep") {
    Engine eng;
    CHECK(exceptional_vanishing_check(eng, 2, 4).size() == 6);
    CHECK(exceptional_vanishing_check(eng, 3, 3).size() == 6);
    CHECK(exceptional_vanishing_check(eng, 1, 1).empty());  /* nothing fits in one box */
    CHECK(exceptional_vanishing_check(eng, 1, 5).size() == 4);
    CHECK_THROWS_AS(exceptional_vanishing_check(eng, 0, 3), domain_error);
}

TEST_CASE("verdict json") {
    Verdict v = main_verdict({8}, 4, 2, 1);
    const std::string text = verdict_to_json(v);
    CHECK(text == verdict_to_json(v));

    const auto j = nlohmann::json::parse(text);
    CHECK(j.at("outcome") == "ZeroByDegreeBound");
    REQUIRE(j.at("trace").is_array());
    REQUIRE(j.at("trace").size() == 3);
    CHECK(j.at("trace")[0].at("rule") == "hypothesis-gate");
    CHECK(j.at("trace")[1].at("rule") == "shape-filter");
    CHECK(j.at("trace")[2].at("rule") == "degree-bound");
    CHECK(j.at("trace")[2].at("params").at("d") == "2");

    CHECK(std::string(outcome_name(Outcome::KroneckerPositive)) == "KroneckerPositive");
    CHECK(std::string(outcome_name(Outcome::HypothesisNotMet)) == "HypothesisNotMet");
}
