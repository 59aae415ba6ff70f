#include "kronforge.h"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "certificates.hpp"
#include "coefficients.hpp"
#include "hooks.hpp"
#include "partition.hpp"
#include "verdict.hpp"

using nlohmann::json;

struct kf_engine {
    kf::Engine eng;
    std::string last_error;
};

namespace {

/* out strings are malloc'd so the C side frees them with free() */
char* dup_cstring(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <typename F>
kf_status guarded(kf_engine* eng, F&& body) {
    if (!eng) return KF_ERR_DOMAIN;
    try {
        body();
        return KF_OK;
    } catch (const kf::budget_error& e) {
        eng->last_error = e.what();
        return KF_ERR_BUDGET;
    } catch (const kf::verify_error& e) {
        eng->last_error = e.what();
        return KF_ERR_VERIFY;
    } catch (const kf::domain_error& e) {
        eng->last_error = e.what();
        return KF_ERR_DOMAIN;
    } catch (const std::exception& e) {
        eng->last_error = e.what();
        return KF_ERR_INTERNAL;
    }
}

kf::Partition parse_arg(const char* text, const char* what) {
    if (!text) throw kf::domain_error(std::string(what) + ": null partition argument");
    return kf::parse_partition(text);
}

json partition_json(const kf::Partition& p) {
    json a = json::array();
    for (int64_t v : p) a.push_back(v);
    return a;
}

void emit(char** out, const json& j) {
    if (!out) throw kf::domain_error("null output pointer");
    *out = dup_cstring(j.dump());
    if (!*out) throw std::bad_alloc();
}

}  // namespace

extern "C" {

kf_engine* kf_engine_new(void) {
    try {
        return new kf_engine();
    } catch (...) {
        return nullptr;
    }
}

void kf_engine_free(kf_engine* eng) { delete eng; }

const char* kf_engine_last_error(const kf_engine* eng) {
    return eng ? eng->last_error.c_str() : "null engine";
}

kf_status kf_engine_set_budget(kf_engine* eng, int64_t kron_max_n, int64_t pleth_max_dn) {
    return guarded(eng, [&] {
        if (kron_max_n > 0) eng->eng.budget.kron_max_n = kron_max_n;
        if (pleth_max_dn > 0) eng->eng.budget.pleth_max_dn = pleth_max_dn;
    });
}

kf_status kf_engine_set_force(kf_engine* eng, int force) {
    return guarded(eng, [&] { eng->eng.budget.force = force != 0; });
}

kf_status kf_engine_set_threads(kf_engine* eng, int threads) {
    return guarded(eng, [&] {
        if (threads < 1) throw kf::domain_error("set_threads: thread count must be positive");
        eng->eng.threads = threads;
    });
}

kf_status kf_engine_set_cache_dir(kf_engine* eng, const char* dir) {
    return guarded(eng, [&] { eng->eng.cache_dir = dir ? dir : ""; });
}

kf_status kf_engine_save_caches(kf_engine* eng) {
    return guarded(eng, [&] { eng->eng.save_caches(); });
}

void kf_string_free(char* s) { std::free(s); }

kf_status kf_kronecker(kf_engine* eng, const char* lam, const char* mu, const char* nu,
                       char** out_json) {
    return guarded(eng, [&] {
        const auto r = kf::kronecker(eng->eng, parse_arg(lam, "kronecker"),
                                     parse_arg(mu, "kronecker"), parse_arg(nu, "kronecker"));
        json j{{"schema", "kron-v1"},
               {"value", r.value.get_str()},
               {"method", r.method},
               {"classes_visited", r.classes_visited}};
        emit(out_json, j);
    });
}

kf_status kf_lr(kf_engine* eng, const char* lam, const char* mu, const char* nu,
                char** out_json) {
    return guarded(eng, [&] {
        const auto r = kf::lr_coefficient(eng->eng, parse_arg(lam, "lr"), parse_arg(mu, "lr"),
                                          parse_arg(nu, "lr"));
        json j{{"schema", "lr-v1"}, {"value", r.value.get_str()}, {"method", r.method}};
        emit(out_json, j);
    });
}

kf_status kf_plethysm(kf_engine* eng, const char* lam, int64_t d, int64_t n, char** out_json) {
    return guarded(eng, [&] {
        const auto r = kf::plethysm_a(eng->eng, parse_arg(lam, "plethysm"), d, n);
        json j{{"schema", "pleth-v1"}, {"value", r.value.get_str()}, {"method", r.method}};
        emit(out_json, j);
    });
}

kf_status kf_limit(kf_engine* eng, const char* rho, int64_t d, char** out_json) {
    return guarded(eng, [&] {
        const kf::Partition r = parse_arg(rho, "limit");
        const auto res = d < 0 ? kf::limit_a_rho(eng->eng, r) : kf::limit_a_rho_d(eng->eng, r, d);
        json j{{"schema", "limit-v1"},
               {"value", res.value.get_str()},
               {"method", res.method},
               {"rho", partition_json(r)}};
        if (d >= 0) j["d"] = d;
        emit(out_json, j);
    });
}

kf_status kf_hook_value(kf_engine* eng, int64_t d, int64_t n, int64_t k, char** out_json) {
    return guarded(eng, [&] {
        json j{{"schema", "hook-v1"},
               {"value", kf::hook_kron(d, n, k).get_str()},
               {"d", d},
               {"n", n},
               {"k", k}};
        emit(out_json, j);
    });
}

kf_status kf_hook_table(kf_engine* eng, int64_t d, char** out_json) {
    return guarded(eng, [&] {
        const auto coeffs = kf::hook_genfun(d);
        json cj = json::array();
        for (const auto& c : coeffs) cj.push_back(c.get_str());
        json vj = json::array();
        for (int64_t k : kf::vanishing_set(d)) vj.push_back(k);
        json j{{"schema", "hook-table-v1"}, {"d", d}, {"coefficients", cj}, {"vanishing", vj}};
        emit(out_json, j);
    });
}

kf_status kf_stable_table(kf_engine* eng, const char* rho, int64_t n_max, int64_t d_max,
                          char** out_json) {
    return guarded(eng, [&] {
        const kf::Partition r = parse_arg(rho, "stable_table");
        if (n_max < 1 || d_max < 1)
            throw kf::domain_error("stable_table: n_max and d_max must be positive");
        const int64_t rho1 = r.empty() ? 0 : r[0];
        json entries = json::array();
        for (int64_t n = 1; n <= n_max; ++n)
            for (int64_t d = 1; d <= d_max; ++d) {
                const int64_t N = kf::checked_mul(n, d);
                mpz_class g = 0;
                if (N - kf::part_size(r) >= rho1)
                    g = kf::kronecker(eng->eng, kf::pad(r, N), kf::rect(n, d), kf::rect(n, d))
                            .value;
                entries.push_back(json{{"n", n}, {"d", d}, {"value", g.get_str()}});
            }
        json j{{"schema", "stable-table-v1"}, {"rho", partition_json(r)}, {"entries", entries}};
        emit(out_json, j);
    });
}

kf_status kf_decompose(kf_engine* eng, const char* nu, char** out_json) {
    return guarded(eng, [&] {
        const kf::Partition v = parse_arg(nu, "decompose");
        const kf::Decomposition D = kf::decompose(v);
        json xs = json::array(), ys = json::array();
        for (size_t k = 2; k < D.x.size(); ++k)
            if (D.x[k] != 0) xs.push_back(json::array({static_cast<int64_t>(k), D.x[k]}));
        for (size_t k = 2; k < D.y.size(); ++k)
            if (D.y[k] != 0) ys.push_back(json::array({static_cast<int64_t>(k), D.y[k]}));
        json j{{"schema", "decompose-v1"},
               {"nu", partition_json(v)},
               {"x", xs},
               {"y", ys},
               {"rho", partition_json(D.rho)},
               {"xi", partition_json(D.xi)},
               {"case", D.case_tag}};
        emit(out_json, j);
    });
}

kf_status kf_certify(kf_engine* eng, const char* nu, int64_t a, int64_t b, char** out_json) {
    return guarded(eng, [&] {
        const kf::CertPtr cert = kf::main_cert(parse_arg(nu, "certify"), a, b);
        if (!out_json) throw kf::domain_error("null output pointer");
        *out_json = dup_cstring(kf::cert_to_json(cert));
        if (!*out_json) throw kf::domain_error("out of memory");
    });
}

kf_status kf_verify_cert(kf_engine* eng, const char* cert_json, char** out_json) {
    return guarded(eng, [&] {
        if (!cert_json) throw kf::verify_error("verify_cert: null certificate");
        const kf::CertPtr cert = kf::cert_from_json(cert_json);
        const kf::KroneckerTriple root = kf::verify(cert, eng->eng);
        json j{{"schema", "verify-v1"},
               {"status", "verified"},
               {"nodes", kf::node_count(cert)},
               {"root", json{{"lam", partition_json(root.lam)},
                             {"mu", partition_json(root.mu)},
                             {"nu", partition_json(root.nu)}}}};
        emit(out_json, j);
    });
}

kf_status kf_verdict(kf_engine* eng, const char* lam, int64_t n, int64_t d, int64_t m,
                     char** out_json) {
    return guarded(eng, [&] {
        const kf::Verdict v = kf::main_verdict(parse_arg(lam, "verdict"), n, d, m);
        json j = json::parse(kf::verdict_to_json(v));
        j["schema"] = "verdict-v1";
        j["certificate"] = v.cert ? json::parse(kf::cert_to_json(v.cert)) : json(nullptr);
        emit(out_json, j);
    });
}

kf_status kf_saturation(kf_engine* eng, const char* lam, int64_t d, char** out_json) {
    return guarded(eng, [&] {
        const kf::Partition l = parse_arg(lam, "saturation");
        const auto terms = kf::saturation_witness(l, d);
        for (const auto& t : terms) kf::verify(t.cert, eng->eng);
        json tj = json::array();
        for (const auto& t : terms)
            tj.push_back(json{{"coeff", t.coeff.get_str()},
                              {"lam", partition_json(t.cert->triple.lam)},
                              {"cert", json::parse(kf::cert_to_json(t.cert))}});
        json rj = json::array();
        for (const auto& row : kf::saturation_resum(terms)) rj.push_back(row.get_str());
        json j{{"schema", "saturation-v1"},
               {"lam", partition_json(l)},
               {"d", d},
               {"terms", tj},
               {"resum", rj}};
        emit(out_json, j);
    });
}

kf_status kf_selftest(kf_engine* eng, int extended, kf_progress_fn progress, void* user) {
    return guarded(eng, [&] {
        auto report = [&](const std::string& line) {
            if (progress) progress(line.c_str(), user);
        };
        auto run = [&](const char* name, const std::function<void()>& check) {
            try {
                check();
            } catch (const std::exception& e) {
                throw kf::verify_error(std::string("selftest ") + name + ": " + e.what());
            }
            report(std::string("ok ") + name);
        };
        kf::Engine& E = eng->eng;

        run("hook-closed-form", [&] {
            for (int64_t d = 2; d <= 4; ++d) {
                const auto b = kf::hook_genfun(d);
                for (int64_t k = 0; k < d * d; ++k) {
                    const kf::Partition lam =
                        k == 0 ? kf::Partition{d * d} : kf::near_hook(d * d - k, k, {});
                    const mpz_class g =
                        kf::kronecker(E, lam, kf::rect(d, d), kf::rect(d, d)).value;
                    if (g != b[static_cast<size_t>(k)])
                        throw kf::verify_error("closed form mismatch at d=" + std::to_string(d) +
                                               " k=" + std::to_string(k));
                }
            }
        });
        run("vanishing-set", [&] {
            const std::vector<int64_t> want{1, 2, 4, 6, 42, 44, 46, 47};
            if (kf::vanishing_set(7) != want)
                throw kf::verify_error("side-7 vanishing legs are wrong");
        });
        run("two-row-closed-form", [&] {
            for (int64_t k = 0; k <= 6; ++k) {
                const mpz_class want = kf::two_rect_two_row(2, 6, 3, 4, k);
                const kf::Partition lam = k == 0 ? kf::Partition{12} : kf::Partition{12 - k, k};
                const mpz_class g =
                    kf::kronecker(E, lam, kf::rect(2, 6), kf::rect(3, 4)).value;
                if (g != want) throw kf::verify_error("two-row mismatch at k=" + std::to_string(k));
            }
        });
        run("rectangle-fixed-points", [&] {
            if (kf::kronecker(E, kf::rect(6, 2), kf::rect(6, 2), kf::rect(6, 2)).value != 0)
                throw kf::verify_error("6x2 self-product should vanish");
            if (kf::kronecker(E, kf::rect(6, 3), kf::rect(6, 3), kf::rect(6, 3)).value != 1)
                throw kf::verify_error("6x3 self-product should be 1");
        });
        run("exceptional-vanishing", [&] {
            kf::exceptional_vanishing_check(E, 3, 4);
            kf::exceptional_vanishing_check(E, 2, 6);
        });
        run("stable-limits", [&] {
            /* (1^6) stabilizes on a 6 x 6 rectangle, just past the default
             * class-sum cap; zero characters make the sum cheap anyway */
            kf::Engine lifted;
            lifted.budget.force = true;
            lifted.threads = E.threads;
            lifted.cache_dir = E.cache_dir;
            for (const kf::Partition& rho : kf::x_table())
                if (kf::limit_a_rho(lifted, rho).value != 0)
                    throw kf::verify_error("table shape has nonzero limit");
            if (kf::limit_a_rho(lifted, {2}).value != 1 ||
                kf::limit_a_rho(lifted, {2, 2}).value != 2)
                throw kf::verify_error("small limits off");
        });
        run("certificate-roundtrip", [&] {
            const kf::CertPtr cert = kf::near_hook_cert(7, 9, 3, {2, 1});
            kf::verify(cert, E);
            const std::string text = kf::cert_to_json(cert);
            kf::verify(kf::cert_from_json(text), E);
            json tampered = json::parse(text);
            tampered["triple"][0][0] = tampered["triple"][0][0].get<int64_t>() + 1;
            bool caught = false;
            try {
                kf::verify(kf::cert_from_json(tampered.dump()), E);
            } catch (const kf::verify_error&) {
                caught = true;
            }
            if (!caught) throw kf::verify_error("tampered certificate was accepted");
        });
        run("column-decomposition", [&] {
            for (const kf::Partition& nu :
                 {kf::Partition{2}, kf::Partition{5, 4, 4, 3, 1}, kf::Partition{9, 9, 2, 1}}) {
                const kf::Decomposition D = kf::decompose(nu);
                kf::Partition total = kf::add(D.rho, D.xi);
                for (size_t k = 2; k < D.x.size(); ++k) {
                    for (int64_t t = 0; t < D.x[k]; ++t)
                        total = kf::add(total, kf::rect(static_cast<int64_t>(k) - 1,
                                                        static_cast<int64_t>(k)));
                    for (int64_t t = 0; t < D.y[k]; ++t)
                        total = kf::add(total, kf::rect(static_cast<int64_t>(k) - 1, 2));
                }
                if (total != nu) throw kf::verify_error("decomposition does not resum");
            }
        });
        run("main-certificate", [&] {
            const kf::CertPtr cert = kf::main_cert({2}, 82, 243);
            const kf::KroneckerTriple root = kf::verify(cert, E);
            if (root.lam != kf::pad({2}, 82 * 243))
                throw kf::verify_error("main certificate root off");
        });
        run("saturation-resum", [&] {
            const auto terms = kf::saturation_witness({8, 3, 2, 1}, 7);
            for (const auto& t : terms) kf::verify(t.cert, E);
            const auto rows = kf::saturation_resum(terms);
            const kf::Partition want{8, 3, 2, 1};
            if (rows.size() != want.size()) throw kf::verify_error("resum length off");
            for (size_t i = 0; i < rows.size(); ++i)
                if (rows[i] != want[i]) throw kf::verify_error("resum row off");
        });

        if (!extended) return;

        /* slow tier: recompute every registered side-7 base fact by the
         * class sum. The stretched instances live on 7 x 14 and 7 x 21
         * rectangles (98 and 147 cells), beyond any practical class sum;
         * they are derived facts and stay out of this audit. */
        kf::Engine audit;
        audit.budget.force = true;
        audit.threads = E.threads;
        audit.cache_dir = E.cache_dir;
        const auto instances = kf::AxiomRegistry::instance().enumerate(49);
        report("audit: " + std::to_string(instances.size()) + " side-7 instances");
        for (const auto& inst : instances) {
            const mpz_class g =
                kf::kronecker(audit, inst.triple.lam, inst.triple.mu, inst.triple.nu).value;
            std::string tag = inst.id;
            for (int64_t v : inst.ints) tag += " " + std::to_string(v);
            if (!inst.rho.empty()) tag += " rho=" + kf::partition_to_string(inst.rho);
            if (g <= 0)
                throw kf::verify_error("audit: registered fact is not positive: " + tag);
            report("ok audit " + tag + " g=" + g.get_str());
        }
        report("note: stretched instances (98 and 147 cells) are accepted from "
               "their two-row derivations, not re-summed");
    });
}

}  // extern "C"
