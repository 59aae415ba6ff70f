#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <random>
#include <set>

#include "certificates.hpp"
#include "hooks.hpp"
#include "ref_oracle.hpp"

using namespace kf;

static Partition hook_shape(int64_t N, int64_t k) {
    Partition lam{N - k};
    lam.insert(lam.end(), static_cast<size_t>(k), 1);
    if (lam[0] == 1) lam.assign(static_cast<size_t>(N), 1);
    return lam;
}

TEST_CASE("exceptional table") {
    const auto& X = x_table();
    REQUIRE(X.size() == 6);
    CHECK(X[0] == Partition{1});
    CHECK(X[1] == Partition{1, 1});
    CHECK(X[2] == Partition{1, 1, 1, 1});
    CHECK(X[3] == Partition{1, 1, 1, 1, 1, 1});
    CHECK(X[4] == Partition{2, 1});
    CHECK(X[5] == Partition{3, 1});
    for (const auto& rho : X) CHECK(x_membership(rho));
    CHECK_FALSE(x_membership({}));
    CHECK_FALSE(x_membership({2}));
    CHECK_FALSE(x_membership({1, 1, 1}));
    CHECK_FALSE(x_membership({1, 1, 1, 1, 1}));
    CHECK_FALSE(x_membership({3, 1, 1}));
}

TEST_CASE("near-hook admissibility") {
    /* bare hooks: the eight legs with vanishing multiplicity are excluded */
    CHECK(nh_admissible(7, 0, {}));
    CHECK(nh_admissible(7, 3, {}));
    CHECK(nh_admissible(7, 48, {}));
    for (int64_t j : {1, 2, 4, 6, 42, 44, 46, 47}) CHECK_FALSE(nh_admissible(7, j, {}));
    CHECK_FALSE(nh_admissible(7, 49, {}));
    CHECK_FALSE(nh_admissible(7, -1, {}));
    CHECK_FALSE(nh_admissible(6, 3, {}));

    /* decorated legs: j = 0 needs a bare hook, and each small decoration
       has its own short exception list */
    CHECK_FALSE(nh_admissible(7, 0, {1}));
    CHECK(nh_admissible(7, 1, {1}));
    CHECK_FALSE(nh_admissible(7, 2, {1}));
    CHECK_FALSE(nh_admissible(7, 45, {1}));
    CHECK(nh_admissible(7, 46, {1}));
    CHECK_FALSE(nh_admissible(7, 47, {1}));

    CHECK_FALSE(nh_admissible(7, 2, {2}));
    CHECK(nh_admissible(7, 44, {2}));
    CHECK_FALSE(nh_admissible(7, 45, {2}));

    CHECK_FALSE(nh_admissible(7, 1, {1, 1}));
    CHECK_FALSE(nh_admissible(7, 44, {1, 1}));
    CHECK(nh_admissible(7, 43, {1, 1}));
    CHECK(nh_admissible(7, 45, {1, 1}));

    CHECK_FALSE(nh_admissible(7, 1, {2, 1}));
    CHECK(nh_admissible(7, 2, {2, 1}));
    CHECK(nh_admissible(7, 43, {2, 1}));

    CHECK(nh_admissible(7, 1, {3, 2, 1}));
    CHECK(nh_admissible(7, 39, {3, 2, 1}));
    CHECK_FALSE(nh_admissible(7, 40, {3, 2, 1}));
    CHECK_FALSE(nh_admissible(7, 3, {7}));  /* decoration too large */

    CHECK(nh_admissible(8, 58, {}));
    CHECK_FALSE(nh_admissible(8, 57, {}));
    CHECK(nh_admissible(8, 63, {}));
}

TEST_CASE("axiom registry") {
    const AxiomRegistry& reg = AxiomRegistry::instance();

    CHECK(reg.registered("SQUARE", {1}, {}));
    CHECK(reg.registered("SQUARE", {12}, {}));
    CHECK_FALSE(reg.registered("SQUARE", {0}, {}));
    KroneckerTriple sq = reg.instantiate("SQUARE", {3}, {});
    CHECK(sq.lam == rect(3, 3));
    CHECK(sq.mu == rect(3, 3));
    CHECK(sq.nu == rect(3, 3));

    CHECK(reg.registered("HOOK7", {0}, {}));
    CHECK(reg.registered("HOOK7", {3}, {}));
    CHECK_FALSE(reg.registered("HOOK7", {1}, {}));
    CHECK_FALSE(reg.registered("HOOK7", {42}, {}));
    KroneckerTriple h = reg.instantiate("HOOK7", {5}, {});
    CHECK(h.lam == Partition{44, 1, 1, 1, 1, 1});
    CHECK(h.mu == rect(7, 7));

    CHECK(reg.registered("NEARHOOK7", {3}, {1}));
    CHECK_FALSE(reg.registered("NEARHOOK7", {2}, {1}));  /* excluded leg */
    CHECK_FALSE(reg.registered("NEARHOOK7", {3}, {}));   /* bare hook is HOOK7 */
    KroneckerTriple nh = reg.instantiate("NEARHOOK7", {3}, {1});
    CHECK(nh.lam == Partition{45, 2, 1, 1});
    CHECK(nh.mu == rect(7, 7));
    CHECK_THROWS_AS(reg.instantiate("NEARHOOK7", {2}, {7}), domain_error);

    CHECK(reg.registered("STRETCH7", {2, 1}, {}));
    CHECK(reg.registered("STRETCH7", {3, 47}, {}));
    CHECK_FALSE(reg.registered("STRETCH7", {4, 1}, {}));
    CHECK_FALSE(reg.registered("STRETCH7", {2, 3}, {}));
    KroneckerTriple st = reg.instantiate("STRETCH7", {2, 2}, {});
    CHECK(st.lam == Partition{94, 2, 2});
    CHECK(st.mu == rect(7, 14));
    CHECK(st.nu == rect(7, 14));

    const auto& cases = reg.rho_cases();
    CHECK(cases.size() == 34);
    for (const auto& rho : cases) {
        CHECK_FALSE(x_membership(rho));
        CHECK(reg.registered("RHOCASE", {}, rho));
        KroneckerTriple t = reg.instantiate("RHOCASE", {}, rho);
        CHECK(t.lam == pad(rho, 49));
        CHECK(t.mu == rect(7, 7));
    }
    CHECK_FALSE(reg.registered("RHOCASE", {}, {2, 1}));
    CHECK_THROWS_AS(reg.instantiate("NOSUCH", {}, {}), domain_error);
}

TEST_CASE("axiom enumeration") {
    const AxiomRegistry& reg = AxiomRegistry::instance();

    auto count_id = [](const std::vector<AxiomInstance>& v, const std::string& id) {
        int64_t c = 0;
        for (const auto& a : v)
            if (a.id == id) ++c;
        return c;
    };

    auto small = reg.enumerate(16);
    CHECK(small.size() == 4);  /* squares of side 1..4 only */
    for (const auto& a : small) CHECK(a.id == "SQUARE");

    auto full = reg.enumerate(49);
    CHECK(count_id(full, "SQUARE") == 7);
    CHECK(count_id(full, "HOOK7") == 41);  /* 49 legs minus 8 vanishing */
    CHECK(count_id(full, "RHOCASE") == 34);
    CHECK(count_id(full, "STRETCH7") == 0);
    for (const auto& a : full) {
        CHECK(reg.registered(a.id, a.ints, a.rho));
        CHECK(reg.instantiate(a.id, a.ints, a.rho) == a.triple);
        CHECK(part_size(a.triple.lam) <= 49);
        if (a.id == "NEARHOOK7") {
            REQUIRE(a.ints.size() == 1);
            CHECK(nh_admissible(7, a.ints[0], a.rho));
        }
    }

    auto wide = reg.enumerate(98);
    CHECK(count_id(wide, "STRETCH7") == 8);   /* stretch 2 */
    auto wider = reg.enumerate(147);
    CHECK(count_id(wider, "STRETCH7") == 16); /* stretch 2 and 3 */
}

TEST_CASE("leaf constructors derive their triples") {
    CertPtr o = oracle_leaf({2, 1}, {2, 1}, {2, 1});
    CHECK(o->kind == CertKind::OracleLeaf);
    CHECK(o->triple.lam == Partition{2, 1});
    CHECK_THROWS_AS(oracle_leaf({2, 1}, {2}, {2, 1}), domain_error);
    CHECK_THROWS_AS(oracle_leaf({1, 2}, {2, 1}, {2, 1}), domain_error);

    CertPtr h = hook_leaf(2, 3, 3);
    CHECK(h->triple.lam == Partition{3, 1, 1, 1});
    CHECK(h->triple.mu == rect(2, 3));
    CHECK(h->triple.nu == rect(2, 3));
    CHECK_THROWS_AS(hook_leaf(2, 3, 1), domain_error);  /* vanishing leg */
    CHECK_THROWS_AS(hook_leaf(2, 3, 6), domain_error);  /* past the corner */

    CertPtr tc = two_column_leaf(2, 4, 4);
    CHECK(tc->triple.lam == Partition{2, 2, 2, 2});
    CHECK(tc->triple.mu == rect(2, 4));
    CHECK_THROWS_AS(two_column_leaf(2, 8, 8), domain_error);  /* gap 6 fails */
    CHECK_THROWS_AS(two_column_leaf(2, 4, 3), domain_error);  /* unbalanced */
    CHECK_THROWS_AS(two_column_leaf(3, 3, 4), domain_error);  /* square */

    CertPtr dl = delta_leaf(Slot::Mu, {3, 1});
    CHECK(dl->triple.lam == Partition{3, 1});
    CHECK(dl->triple.mu == Partition{4});
    CHECK(dl->triple.nu == Partition{3, 1});
    CertPtr dl2 = delta_leaf(Slot::Lam, {2, 2});
    CHECK(dl2->triple.lam == Partition{4});
    CHECK(dl2->triple.mu == Partition{2, 2});
    CHECK_THROWS_AS(delta_leaf(Slot::Nu, {}), domain_error);

    CertPtr ax = axiom_leaf("SQUARE", {2}, {});
    CHECK(ax->triple.lam == rect(2, 2));
    CHECK_THROWS_AS(axiom_leaf("SQUARE", {0}, {}), domain_error);
    CHECK_THROWS_AS(axiom_leaf("HOOK7", {1}, {}), domain_error);
}

TEST_CASE("combination rules compute triples componentwise") {
    CertPtr a = hook_leaf(3, 3, 3);           /* ((6,1,1,1), 3x3, 3x3) */
    CertPtr b = axiom_leaf("SQUARE", {2}, {}); /* ((2,2), 2x2, 2x2) */
    CertPtr s = add_cert(a, b);
    CHECK(s->triple.lam == Partition{8, 3, 1, 1});
    CHECK(s->triple.mu == Partition{5, 5, 3});
    CHECK(s->triple.nu == Partition{5, 5, 3});
    CHECK(node_count(s) == 3);

    CertPtr t1 = transpose_cert(a, TransposeVariant::MuNu);
    CHECK(t1->triple.lam == a->triple.lam);
    CHECK(t1->triple.mu == rect(3, 3));  /* squares are self-conjugate */
    CertPtr c = hook_leaf(2, 3, 3);
    CertPtr t2 = transpose_cert(c, TransposeVariant::LamMu);
    CHECK(t2->triple.lam == transpose(c->triple.lam));
    CHECK(t2->triple.mu == rect(3, 2));
    CHECK(t2->triple.nu == rect(2, 3));
    CertPtr t3 = transpose_cert(c, TransposeVariant::LamNu);
    CHECK(t3->triple.lam == Partition{4, 1, 1});
    CHECK(t3->triple.mu == rect(2, 3));
    CHECK(t3->triple.nu == rect(3, 2));
    CHECK(node_count(t3) == 2);

    CHECK_THROWS_AS(add_cert(a, nullptr), domain_error);
    CHECK_THROWS_AS(transpose_cert(nullptr, TransposeVariant::MuNu), domain_error);
}

TEST_CASE("verification recomputes every node") {
    Engine eng;
    CertPtr good = add_cert(hook_leaf(3, 3, 3), axiom_leaf("SQUARE", {2}, {}));
    KroneckerTriple root = verify(good, eng);
    CHECK(root == good->triple);

    /* oracle leaves are re-evaluated */
    CHECK_NOTHROW(verify(oracle_leaf({2, 1}, {2, 1}, {2, 1}), eng));
    CHECK_THROWS_AS(verify(oracle_leaf({2, 1}, {3}, {3}), eng), verify_error);

    /* the class-sum budget still applies inside verification */
    CertPtr big = oracle_leaf(Partition{29}, Partition{29}, Partition{29});
    CHECK_THROWS_AS(verify(big, eng), budget_error);
    Engine forced;
    forced.budget.force = true;
    CHECK_NOTHROW(verify(big, forced));

    /* structurally broken nodes are rejected */
    auto leaf_with_child = std::make_shared<CertNode>(*hook_leaf(2, 3, 0));
    leaf_with_child->left = hook_leaf(2, 3, 0);
    CHECK_THROWS_AS(verify(leaf_with_child, eng), verify_error);
    auto two_sided_transpose =
        std::make_shared<CertNode>(*transpose_cert(hook_leaf(2, 3, 0), TransposeVariant::MuNu));
    two_sided_transpose->right = hook_leaf(2, 3, 0);
    CHECK_THROWS_AS(verify(two_sided_transpose, eng), verify_error);
    CHECK_THROWS_AS(verify(nullptr, eng), verify_error);

    auto wrong_triple = std::make_shared<CertNode>(*hook_leaf(3, 3, 3));
    wrong_triple->triple.lam = Partition{5, 2, 1, 1};
    CHECK_THROWS_AS(verify(wrong_triple, eng), verify_error);
}

TEST_CASE("json round trip is canonical") {
    CertPtr cert = transpose_cert(
        add_cert(near_hook_cert(7, 9, 3, {2, 1}), two_column_leaf(2, 4, 4)),
        TransposeVariant::LamMu);
    const std::string text = cert_to_json(cert);
    CHECK(text == cert_to_json(cert));

    CertPtr parsed = cert_from_json(text);
    CHECK(parsed->triple == cert->triple);
    CHECK(node_count(parsed) == node_count(cert));
    CHECK(cert_to_json(parsed) == text);

    Engine eng;
    CHECK_NOTHROW(verify(parsed, eng));

    CHECK_THROWS_AS(cert_from_json("{{{"), verify_error);
    CHECK_THROWS_AS(cert_from_json(""), verify_error);
    CHECK_THROWS_AS(cert_from_json("[]"), verify_error);
    CHECK_THROWS_AS(cert_from_json("{\"schema\":\"cert-v2\"}"), verify_error);

    nlohmann::json j = nlohmann::json::parse(text);
    j.erase("schema");
    CHECK_THROWS_AS(cert_from_json(j.dump()), verify_error);
}

TEST_CASE("tampered certificates fail verification") {
    Engine eng;
    CertPtr cert = add_cert(hook_leaf(3, 3, 3), axiom_leaf("SQUARE", {2}, {}));
    nlohmann::json j = nlohmann::json::parse(cert_to_json(cert));

    {
        nlohmann::json bad = j;  /* inflate the claimed first row */
        bad["triple"][0][0] = bad["triple"][0][0].get<int64_t>() + 1;
        CHECK_THROWS_AS(verify(cert_from_json(bad.dump()), eng), verify_error);
    }
    {
        nlohmann::json bad = j;  /* move a closed-form leaf onto a vanishing leg */
        bad["children"][0]["justification"]["params"]["k"] = 2;
        CHECK_THROWS_AS(verify(cert_from_json(bad.dump()), eng), verify_error);
    }
    {
        nlohmann::json bad = j;  /* keep the leg but lie about the leaf triple */
        bad["children"][0]["triple"][0] = {4, 1, 1, 1, 1, 1};
        CHECK_THROWS_AS(verify(cert_from_json(bad.dump()), eng), verify_error);
    }
    {
        nlohmann::json bad = j;  /* unregistered axiom parameters */
        bad["children"][1]["justification"]["params"]["ints"] = {0};
        CHECK_THROWS_AS(verify(cert_from_json(bad.dump()), eng), verify_error);
    }
    {
        nlohmann::json bad = j;  /* flip an add into a transpose */
        bad["node_kind"] = "transpose";
        bad["variant"] = "mu-nu";
        CHECK_THROWS_AS(verify(cert_from_json(bad.dump()), eng), verify_error);
    }
}

TEST_CASE("small certificates agree with the oracle") {
    Engine eng;
    /* every leaf family instance with at most 8 cells, checked against the
       reference Kronecker */
    for (int64_t d = 1; d <= 8; ++d)
        for (int64_t n = 1; d * n <= 8; ++n)
            for (int64_t k = 0; k < d * n; ++k) {
                if (hook_kron(d, n, k) == 0) continue;
                CertPtr c = hook_leaf(d, n, k);
                verify(c, eng);
                CHECK(kfref::ref_kronecker(c->triple.lam, c->triple.mu, c->triple.nu) > 0);
            }
    for (int64_t n = 1; n <= 8; ++n)
        for (int64_t d = 1; n * d <= 8; ++d) {
            if (n == d || (n * d) % 2 != 0) continue;
            if (two_column(n, d, n * d / 2) != 1) continue;
            CertPtr c = two_column_leaf(n, d, n * d / 2);
            verify(c, eng);
            CHECK(kfref::ref_kronecker(c->triple.lam, c->triple.mu, c->triple.nu) > 0);
        }
    for (int64_t k = 1; k * k <= 8; ++k) {
        CertPtr c = axiom_leaf("SQUARE", {k}, {});
        CHECK(kfref::ref_kronecker(c->triple.lam, c->triple.mu, c->triple.nu) > 0);
    }
    /* composite: the semigroup sum of two positive triples stays positive */
    CertPtr s = add_cert(hook_leaf(2, 2, 3), axiom_leaf("SQUARE", {2}, {}));
    verify(s, eng);
    CHECK(kfref::ref_kronecker(s->triple.lam, s->triple.mu, s->triple.nu) > 0);
}

TEST_CASE("square climbing and widening") {
    Engine eng;
    CertPtr base = square_climb(7, 3, {});
    CHECK(base->kind == CertKind::AxiomLeaf);
    CHECK(base->triple.lam == Partition{46, 1, 1, 1});

    for (int64_t h : {8, 9, 11}) {
        for (int64_t j : {0, 3, 12}) {
            if (!nh_admissible(h, j, {})) continue;
            CertPtr c = square_climb(h, j, {});
            CHECK(c->triple.lam == hook_shape(h * h, j));
            CHECK(c->triple.mu == rect(h, h));
            CHECK_NOTHROW(verify(c, eng));
        }
        CertPtr nh = square_climb(h, 5, {2, 1});
        CHECK(nh->triple.lam == near_hook(h * h - 8, 5, {2, 1}));
        CHECK(nh->triple.mu == rect(h, h));
        CHECK_NOTHROW(verify(nh, eng));
    }

    CertPtr wide = near_hook_cert(8, 12, 7, {2, 2});
    CHECK(wide->triple.lam == near_hook(96 - 11, 7, {2, 2}));
    CHECK(wide->triple.mu == rect(8, 12));
    CHECK_NOTHROW(verify(wide, eng));
    CHECK_THROWS_AS(near_hook_cert(8, 7, 3, {}), domain_error);  /* width below height */
    CHECK_THROWS(square_climb(7, 1, {}));                        /* vanishing leg */
}

TEST_CASE("side extension reproduces the vanishing pattern") {
    const std::set<int64_t> low{1, 2, 4, 6}, high{2, 3, 5, 7};
    auto hook_set = [](int64_t c) {
        std::set<int64_t> s;
        const auto b = hook_genfun(c);
        for (int64_t j = 0; j < c * c; ++j)
            if (b[static_cast<size_t>(j)] != 0) s.insert(j);
        return s;
    };

    std::set<int64_t> P = hook_set(7);
    for (int64_t c = 7; c <= 11; ++c) {
        P = extension_step(P, c, {}, low, high);
        CHECK(P == hook_set(c + 1));
    }

    CHECK_THROWS_AS(extension_step({-1}, 7, {}, low, high), domain_error);
    CHECK_THROWS_AS(extension_step({50}, 7, {}, low, high), domain_error);
    CHECK_THROWS_AS(extension_step({3}, 6, {}, low, high), domain_error);
}

TEST_CASE("rectangle growth") {
    Engine eng;
    CertPtr sq = axiom_leaf("SQUARE", {7}, {});
    CertPtr g = grow_rect(sq, 8, 9);
    CHECK(g->triple.lam == Partition{30, 7, 7, 7, 7, 7, 7});
    CHECK(g->triple.mu == rect(8, 9));
    CHECK(g->triple.nu == rect(8, 9));
    CHECK_NOTHROW(verify(g, eng));
    CHECK(grow_rect(sq, 7, 7) == sq);  /* no-op growth returns the input */

    CHECK_THROWS_AS(grow_rect(sq, 6, 9), domain_error);
    CHECK_THROWS_AS(grow_rect(delta_leaf(Slot::Lam, {2, 1}), 3, 3), domain_error);
    CHECK_THROWS_AS(grow_rect(nullptr, 3, 3), domain_error);
}

TEST_CASE("row blocks of squares") {
    Engine eng;
    CertPtr c = rect_block_cert(2, 3, 7);
    CHECK(c->triple.lam == Partition{8, 6});
    CHECK(c->triple.mu == rect(7, 2));
    CHECK_NOTHROW(verify(c, eng));

    CertPtr c2 = rect_block_cert(3, 2, 6);
    CHECK(c2->triple.lam == Partition{6, 6, 6});  /* exactly two squares, no pad */
    CHECK(c2->triple.mu == rect(6, 3));
    CHECK_NOTHROW(verify(c2, eng));

    CHECK_THROWS_AS(rect_block_cert(3, 2, 5), domain_error);
    CHECK_THROWS_AS(rect_block_cert(0, 1, 1), domain_error);
}

TEST_CASE("stretched hooks") {
    Engine eng;
    for (int64_t i : {2, 3, 4, 5}) {
        for (int64_t k : {0, 1, 2, 4, 6, 17, 42, 44, 46, 47, 48}) {
            CertPtr c = stretched_hook_cert(i, 7, k);
            Partition want{i * (49 - k)};
            want.insert(want.end(), static_cast<size_t>(k), i);
            CHECK(c->triple.lam == want);
            CHECK(c->triple.mu == rect(7, 7 * i));
            CHECK(c->triple.nu == rect(7, 7 * i));
            CHECK_NOTHROW(verify(c, eng));
        }
    }
    for (int64_t k : {1, 6, 30, 62}) {  /* one side up, all four leg regimes */
        CertPtr c = stretched_hook_cert(2, 8, k);
        Partition want{2 * (64 - k)};
        want.insert(want.end(), static_cast<size_t>(k), 2);
        CHECK(c->triple.lam == want);
        CHECK(c->triple.mu == rect(8, 16));
        CHECK_NOTHROW(verify(c, eng));
    }
    CHECK_THROWS_AS(stretched_hook_cert(1, 7, 3), domain_error);
    CHECK_THROWS_AS(stretched_hook_cert(2, 6, 3), domain_error);
    CHECK_THROWS_AS(stretched_hook_cert(2, 7, 49), domain_error);
}

TEST_CASE("even row shapes over a rectangle") {
    Engine eng;
    CertPtr c = even_rows_cert({4, 2}, 7);
    const int64_t W = c->triple.mu.empty() ? 0 : c->triple.mu[0];
    CHECK(W == 28);
    CHECK(c->triple.mu == rect(7, W));
    CHECK(c->triple.lam == pad({4, 2}, 7 * W));
    CHECK_NOTHROW(verify(c, eng));

    CertPtr e = even_rows_cert({}, 9);
    CHECK(e->triple.lam == Partition{9});
    CHECK_NOTHROW(verify(e, eng));

    CHECK_THROWS_AS(even_rows_cert({3, 2}, 7), domain_error);
    CHECK_THROWS_AS(even_rows_cert({2}, 6), domain_error);
}

TEST_CASE("column rule certificates") {
    Engine eng;
    struct Case {
        int64_t d, n;
        Partition rho;
    };
    for (const auto& [d, n, rho] : std::vector<Case>{{7, 14, {2, 2}},
                                                     {7, 21, {3, 3}},
                                                     {7, 50, {3, 3}},
                                                     {7, 14, {2, 2, 2}},
                                                     {8, 24, {3, 3, 3}},
                                                     {7, 10, {}}}) {
        CertPtr c = columns_rule_cert(d, n, rho);
        CHECK(c->triple.lam == pad(rho, d * n));
        CHECK(c->triple.mu == rect(d, n));
        CHECK(c->triple.nu == rect(d, n));
        CHECK_NOTHROW(verify(c, eng));
    }

    CHECK_THROWS_AS(columns_rule_cert(6, 14, {2, 2}), domain_error);   /* side too small */
    CHECK_THROWS_AS(columns_rule_cert(7, 14, {1}), domain_error);      /* single short column */
    CHECK_THROWS_AS(columns_rule_cert(7, 14, {2, 1}), domain_error);
    CHECK_THROWS_AS(columns_rule_cert(7, 13, {2, 2}), domain_error);   /* n below d * rho_1 */
    Partition tall = rect(42, 2);                                      /* columns at height 42 */
    CHECK_THROWS_AS(columns_rule_cert(7, 200, tall), domain_error);
}

TEST_CASE("column decomposition invariants") {
    auto reconstruct = [](const Partition& nu, const Decomposition& D) {
        Partition total = add(D.rho, D.xi);
        for (int64_t k = 2; k < static_cast<int64_t>(D.x.size()); ++k) {
            for (int64_t t = 0; t < D.x[static_cast<size_t>(k)]; ++t)
                total = add(total, rect(k - 1, k));
            for (int64_t t = 0; t < D.y[static_cast<size_t>(k)]; ++t)
                total = add(total, rect(k - 1, 2));
        }
        return total == nu;
    };
    auto check_invariants = [&](const Partition& nu) {
        const Decomposition D = decompose(nu);
        CHECK(reconstruct(nu, D));
        CHECK_FALSE(x_membership(D.rho));
        CHECK(D.case_tag >= 1);
        CHECK(D.case_tag <= 5);
        for (int64_t k = 2; k < static_cast<int64_t>(D.y.size()); ++k) {
            CHECK(D.y[static_cast<size_t>(k)] >= 0);
            CHECK(D.y[static_cast<size_t>(k)] < k);
            CHECK(D.x[static_cast<size_t>(k)] >= 0);
        }
        /* spare columns: distinct heights, none at 1, 2, 4, or 6 */
        for (const auto& [h, cnt] : column_multiplicities(D.xi)) {
            CHECK(cnt == 1);
            CHECK(h != 1);
            CHECK(h != 2);
            CHECK(h != 4);
            CHECK(h != 6);
        }
    };

    check_invariants({2});
    check_invariants({1, 1, 1});
    check_invariants({5, 4, 4, 3, 1});
    check_invariants({13, 13, 13, 13, 13, 13});
    check_invariants({9, 7, 7, 5, 3, 3, 2, 1});

    std::mt19937 rng(20240817);
    int64_t built = 0;
    while (built < 300) {
        std::uniform_int_distribution<int64_t> len_d(1, 12), part_d(1, 20);
        const int64_t len = len_d(rng);
        Partition nu;
        int64_t cur = part_d(rng);
        for (int64_t i = 0; i < len; ++i) {
            nu.push_back(cur);
            std::uniform_int_distribution<int64_t> next_d(1, cur);
            cur = next_d(rng);
        }
        if (x_membership(nu)) continue;
        check_invariants(nu);
        ++built;
    }

    CHECK_THROWS_AS(decompose({}), domain_error);
    CHECK_THROWS_AS(decompose({1}), domain_error);
    CHECK_THROWS_AS(decompose({3, 1}), domain_error);
}

TEST_CASE("main positivity certificates") {
    Engine eng;
    auto check_main = [&](const Partition& nu, int64_t a, int64_t b) {
        CertPtr c = main_cert(nu, a, b);
        CHECK(c->triple.lam == pad(nu, a * b));
        CHECK(c->triple.mu == rect(a, b));
        CHECK(c->triple.nu == rect(a, b));
        CHECK_NOTHROW(verify(c, eng));
    };

    check_main({2}, 82, 243);
    check_main({5, 4, 4, 3, 1}, 82, 243);
    check_main({13, 13, 13, 13, 13, 13}, 82, 243);      /* six max-weight pair columns */
    check_main({13, 13, 13, 13, 13, 13, 13, 13}, 82, 243);
    check_main({9, 7, 7, 5, 3, 3, 2, 1}, 82, 243);
    check_main({3, 3, 3, 3, 3, 3, 3, 3, 3, 3}, 110, 363);

    CHECK_THROWS_AS(main_cert({1}, 82, 243), domain_error);
    CHECK_THROWS_AS(main_cert({}, 82, 243), domain_error);
    CHECK_THROWS_AS(main_cert({2}, 81, 243), domain_error);
    CHECK_THROWS_AS(main_cert({2}, 82, 242), domain_error);
    CHECK_THROWS_AS(main_cert(Partition{5000}, 82, 243), domain_error);
}

TEST_CASE("saturation witnesses resum to the target shape") {
    Engine eng;
    auto check_sat = [&](const Partition& lam, int64_t d) {
        const auto terms = saturation_witness(lam, d);
        REQUIRE(!terms.empty());
        for (const auto& t : terms) CHECK_NOTHROW(verify(t.cert, eng));
        const auto rows = saturation_resum(terms);
        REQUIRE(rows.size() == lam.size());
        for (size_t i = 0; i < lam.size(); ++i) CHECK(rows[i] == lam[i]);
        return terms;
    };

    check_sat({7}, 7);
    check_sat({2, 2, 2, 2, 2, 2, 2}, 7);
    const auto terms = check_sat({8, 3, 2, 1}, 7);
    bool has_negative = false;
    for (const auto& t : terms) has_negative = has_negative || t.coeff < 0;
    CHECK(has_negative);

    CHECK_THROWS_AS(saturation_witness({8, 3, 2}, 7), domain_error);  /* 13 not divisible */
    CHECK_THROWS_AS(saturation_witness({6, 6}, 6), domain_error);
    Partition too_long(56, 1);
    CHECK_THROWS_AS(saturation_witness(too_long, 7), domain_error);
}
