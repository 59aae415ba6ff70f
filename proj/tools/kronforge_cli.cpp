#include <kronforge.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct EngineHandle {
    kf_engine* e = kf_engine_new();
    ~EngineHandle() { kf_engine_free(e); }
};

/* adopt a C-API string and free it on scope exit */
std::string take(char* s) {
    std::string out = s ? s : "";
    kf_string_free(s);
    return out;
}

int fail(kf_engine* e, kf_status st) {
    std::cerr << "error: " << kf_engine_last_error(e) << "\n";
    return static_cast<int>(st);
}

std::string join_parts(const json& arr) {
    std::string s;
    for (const auto& v : arr) {
        if (!s.empty()) s += ",";
        s += std::to_string(v.get<int64_t>());
    }
    return s;
}

/* progress lines are sparse next to the compute between them, so flush each
 * one; otherwise a piped hour-long audit shows nothing until exit */
void print_progress(const char* line, void*) { std::cout << line << std::endl; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "kronforge: rectangular Kronecker coefficients, stable tables, and\n"
        "positivity certificates.\n\n"
        "Partitions are comma-separated parts (\"6,6,3,2,1\"); the rectangle\n"
        "shorthand \"n x d\" (n rows of width d) works anywhere a partition\n"
        "does. Output is aligned TSV, or JSON with --json; multiplicities are\n"
        "decimal strings in JSON. Exit codes: 0 ok, 1 domain error, 2 budget\n"
        "refusal, 3 verification failure."};
    app.require_subcommand(1);

    bool as_json = false, force = false;
    int64_t budget = 0;
    int threads = 1;
    app.add_flag("--json", as_json, "emit JSON instead of TSV");
    app.add_flag("--force", force, "lift the oracle budgets");
    app.add_option("--budget", budget, "override both oracle budgets (class-sum N and d*n)");
    app.add_option("--threads", threads, "worker threads for the class sum")
        ->check(CLI::PositiveNumber);

    std::string lam, mu, nu, rho;
    int64_t d = 0, n = 0, k = -1, m = 0, a = 0, b = 0;
    int64_t n_max = 6, d_max = 6;
    bool table = false, quick = false, extended = false;
    std::string in_file, out_file;

    auto* c_kron = app.add_subcommand("kron", "g(lam, mu, nu) by the character class sum");
    c_kron->add_option("--lam", lam)->required();
    c_kron->add_option("--mu", mu)->required();
    c_kron->add_option("--nu", nu)->required();

    auto* c_lr = app.add_subcommand("lr", "Littlewood-Richardson coefficient c^lam_{mu nu}");
    c_lr->add_option("--lam", lam)->required();
    c_lr->add_option("--mu", mu)->required();
    c_lr->add_option("--nu", nu)->required();

    auto* c_pleth = app.add_subcommand("pleth", "plethysm multiplicity a_lam(d[n])");
    c_pleth->add_option("--lam", lam)->required();
    c_pleth->add_option("--d", d)->required();
    c_pleth->add_option("--n", n)->required();

    auto* c_limit =
        app.add_subcommand("limit", "stable value a_rho(d), or the full limit a_rho without --d");
    c_limit->add_option("--rho", rho)->required();
    c_limit->add_option("--d", d, "column width; omit for the limit over d");

    auto* c_hook = app.add_subcommand(
        "hook", "hook multiplicities over a d x n rectangle; --table prints the\n"
                "stable column as TSV (d, k, g_k), --k one value (default n = d)");
    c_hook->add_option("--d", d)->required();
    c_hook->add_option("--n", n, "rectangle height (defaults to d)");
    c_hook->add_option("--k", k, "leg length");
    c_hook->add_flag("--table", table, "full coefficient table");

    auto* c_tables = app.add_subcommand(
        "tables", "padded multiplicities g(rho(nd), n x d, n x d) as TSV (n, d, value)");
    c_tables->add_option("--rho", rho)->required();
    c_tables->add_option("--n-max", n_max, "max rows (default 6)");
    c_tables->add_option("--d-max", d_max, "max width (default 6)");

    auto* c_dec = app.add_subcommand(
        "decompose", "column decomposition of nu as TSV (field, value) with x and y\n"
                     "rows as (kind, k, count)");
    c_dec->add_option("--nu", nu)->required();

    auto* c_cert = app.add_subcommand(
        "certify", "build the positivity certificate for (nu(ab), a x b, a x b);\n"
                   "prints cert-v1 JSON");
    c_cert->add_option("--nu", nu)->required();
    c_cert->add_option("--a", a)->required();
    c_cert->add_option("--b", b)->required();
    c_cert->add_option("--out", out_file, "write the certificate here instead of stdout");

    auto* c_ver = app.add_subcommand(
        "verify-cert", "re-verify a cert-v1 document from a file or stdin; exit 3 on\n"
                       "any mismatch");
    c_ver->add_option("file", in_file, "certificate file (stdin when absent)");

    auto* c_verd = app.add_subcommand(
        "verdict", "case analysis for an occurrence obstruction (lam, n, d, m)");
    c_verd->add_option("--lam", lam)->required();
    c_verd->add_option("--n", n)->required();
    c_verd->add_option("--d", d)->required();
    c_verd->add_option("--m", m)->required();
    c_verd->add_option("--cert-out", out_file, "write the attached certificate here");

    auto* c_sat = app.add_subcommand(
        "saturation", "signed semigroup witness for lam over d-row rectangles as TSV\n"
                      "(coeff, lam), then the resummed rows");
    c_sat->add_option("--lam", lam)->required();
    c_sat->add_option("--d", d)->required();

    auto* c_self = app.add_subcommand("selftest", "built-in checks");
    c_self->add_flag("--quick", quick, "curated oracle checks (default)");
    c_self->add_flag("--extended", extended,
                     "also re-verify the side-7 base facts by the class sum (slow)");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    EngineHandle H;
    if (!H.e) {
        std::cerr << "error: engine allocation failed\n";
        return 4;
    }
    if (budget > 0) kf_engine_set_budget(H.e, budget, budget);
    if (force) kf_engine_set_force(H.e, 1);
    if (threads > 1) kf_engine_set_threads(H.e, threads);
    if (const char* cache = std::getenv("KRONFORGE_CACHE"))
        if (*cache) kf_engine_set_cache_dir(H.e, cache);

    char* raw = nullptr;
    kf_status st = KF_OK;
    json out;
    auto call = [&](kf_status s) {
        st = s;
        if (st == KF_OK) out = json::parse(take(raw));
        raw = nullptr;
        return st == KF_OK;
    };
    auto finish = [&]() -> int {
        if (const char* cache = std::getenv("KRONFORGE_CACHE"))
            if (*cache) kf_engine_save_caches(H.e);
        return 0;
    };

    if (app.got_subcommand(c_kron)) {
        if (!call(kf_kronecker(H.e, lam.c_str(), mu.c_str(), nu.c_str(), &raw)))
            return fail(H.e, st);
        std::cout << (as_json ? out.dump() : out["value"].get<std::string>()) << "\n";
        return finish();
    }
    if (app.got_subcommand(c_lr)) {
        if (!call(kf_lr(H.e, lam.c_str(), mu.c_str(), nu.c_str(), &raw))) return fail(H.e, st);
        std::cout << (as_json ? out.dump() : out["value"].get<std::string>()) << "\n";
        return finish();
    }
    if (app.got_subcommand(c_pleth)) {
        if (!call(kf_plethysm(H.e, lam.c_str(), d, n, &raw))) return fail(H.e, st);
        std::cout << (as_json ? out.dump() : out["value"].get<std::string>()) << "\n";
        return finish();
    }
    if (app.got_subcommand(c_limit)) {
        const int64_t dv = c_limit->count("--d") ? d : -1;
        if (!call(kf_limit(H.e, rho.c_str(), dv, &raw))) return fail(H.e, st);
        std::cout << (as_json ? out.dump() : out["value"].get<std::string>()) << "\n";
        return finish();
    }
    if (app.got_subcommand(c_hook)) {
        if (table) {
            if (!call(kf_hook_table(H.e, d, &raw))) return fail(H.e, st);
            if (as_json) {
                std::cout << out.dump() << "\n";
            } else {
                const auto& coeffs = out["coefficients"];
                for (size_t i = 0; i < coeffs.size(); ++i)
                    std::cout << d << "\t" << i << "\t" << coeffs[i].get<std::string>() << "\n";
            }
            return finish();
        }
        if (k < 0) {
            std::cerr << "error: hook needs --table or --k\n";
            return 1;
        }
        if (!call(kf_hook_value(H.e, d, c_hook->count("--n") ? n : d, k, &raw)))
            return fail(H.e, st);
        std::cout << (as_json ? out.dump() : out["value"].get<std::string>()) << "\n";
        return finish();
    }
    if (app.got_subcommand(c_tables)) {
        if (!call(kf_stable_table(H.e, rho.c_str(), n_max, d_max, &raw))) return fail(H.e, st);
        if (as_json) {
            std::cout << out.dump() << "\n";
        } else {
            for (const auto& e : out["entries"])
                std::cout << e["n"].get<int64_t>() << "\t" << e["d"].get<int64_t>() << "\t"
                          << e["value"].get<std::string>() << "\n";
        }
        return finish();
    }
    if (app.got_subcommand(c_dec)) {
        if (!call(kf_decompose(H.e, nu.c_str(), &raw))) return fail(H.e, st);
        if (as_json) {
            std::cout << out.dump() << "\n";
        } else {
            std::cout << "rho\t" << join_parts(out["rho"]) << "\n";
            std::cout << "xi\t" << join_parts(out["xi"]) << "\n";
            std::cout << "case\t" << out["case"].get<int>() << "\n";
            for (const auto& e : out["x"])
                std::cout << "x\t" << e[0].get<int64_t>() << "\t" << e[1].get<int64_t>() << "\n";
            for (const auto& e : out["y"])
                std::cout << "y\t" << e[0].get<int64_t>() << "\t" << e[1].get<int64_t>() << "\n";
        }
        return finish();
    }
    if (app.got_subcommand(c_cert)) {
        if (!call(kf_certify(H.e, nu.c_str(), a, b, &raw))) return fail(H.e, st);
        if (out_file.empty()) {
            std::cout << out.dump() << "\n";
        } else {
            std::ofstream f(out_file, std::ios::binary);
            f << out.dump() << "\n";
            if (!f) {
                std::cerr << "error: cannot write " << out_file << "\n";
                return 1;
            }
        }
        return finish();
    }
    if (app.got_subcommand(c_ver)) {
        std::string text;
        if (in_file.empty()) {
            std::ostringstream ss;
            ss << std::cin.rdbuf();
            text = ss.str();
        } else {
            std::ifstream f(in_file, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot read " << in_file << "\n";
                return 1;
            }
            std::ostringstream ss;
            ss << f.rdbuf();
            text = ss.str();
        }
        if (!call(kf_verify_cert(H.e, text.c_str(), &raw))) return fail(H.e, st);
        if (as_json) {
            std::cout << out.dump() << "\n";
        } else {
            std::cout << "verified\tnodes=" << out["nodes"].get<int64_t>()
                      << "\tlam=" << join_parts(out["root"]["lam"])
                      << "\tmu=" << join_parts(out["root"]["mu"])
                      << "\tnu=" << join_parts(out["root"]["nu"]) << "\n";
        }
        return finish();
    }
    if (app.got_subcommand(c_verd)) {
        if (!call(kf_verdict(H.e, lam.c_str(), n, d, m, &raw))) return fail(H.e, st);
        if (!out_file.empty()) {
            if (out["certificate"].is_null()) {
                std::cerr << "note: no certificate attached\n";
            } else {
                std::ofstream f(out_file, std::ios::binary);
                f << out["certificate"].dump() << "\n";
                if (!f) {
                    std::cerr << "error: cannot write " << out_file << "\n";
                    return 1;
                }
            }
        }
        if (as_json) {
            std::cout << out.dump() << "\n";
        } else {
            std::cout << out["outcome"].get<std::string>() << "\n";
            for (const auto& step : out["trace"]) {
                std::cout << step["rule"].get<std::string>();
                for (const auto& [key, val] : step["params"].items())
                    std::cout << "\t" << key << "=" << val.get<std::string>();
                std::cout << "\n";
            }
        }
        return finish();
    }
    if (app.got_subcommand(c_sat)) {
        if (!call(kf_saturation(H.e, lam.c_str(), d, &raw))) return fail(H.e, st);
        if (as_json) {
            std::cout << out.dump() << "\n";
        } else {
            for (const auto& t : out["terms"])
                std::cout << t["coeff"].get<std::string>() << "\t" << join_parts(t["lam"])
                          << "\n";
            std::cout << "resum";
            for (const auto& row : out["resum"]) std::cout << "\t" << row.get<std::string>();
            std::cout << "\n";
        }
        return finish();
    }
    if (app.got_subcommand(c_self)) {
        (void)quick;  /* the curated tier always runs */
        st = kf_selftest(H.e, extended ? 1 : 0, print_progress, nullptr);
        if (st != KF_OK) return fail(H.e, st);
        std::cout << "selftest passed\n";
        return finish();
    }
    return 1;
}
