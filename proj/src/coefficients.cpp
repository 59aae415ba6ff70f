#include "coefficients.hpp"

#include <algorithm>
#include <cassert>
#include <filesystem>
#include <fstream>
#include <functional>
#include <thread>
#include <vector>

namespace kf {

namespace {

std::string family_file_name(const Partition& fam) {
    std::string s = "chi_";
    if (fam.empty()) s += "0";
    for (size_t i = 0; i < fam.size(); ++i) {
        if (i) s += '-';
        s += std::to_string(fam[i]);
    }
    return s + ".kfch";
}

/* classes with a part exceeding this bound kill chi for the shape */
int64_t first_hook_bound(const Partition& s) {
    if (s.empty()) return 0;
    return part_length(s) + s[0] - 1;
}

}  // namespace

CharacterCache& Engine::family_cache(const Partition& family) {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = caches_.find(family);
    if (it != caches_.end()) return *it->second;
    auto cache = std::make_unique<CharacterCache>();
    if (!cache_dir.empty()) {
        std::ifstream in(std::filesystem::path(cache_dir) / family_file_name(family),
                         std::ios::binary);
        if (in) cache->load(in);  /* a failed load just means a cold start */
    }
    auto [pos, fresh] = caches_.emplace(family, std::move(cache));
    (void)fresh;
    return *pos->second;
}

void Engine::save_caches() const {
    if (cache_dir.empty()) return;
    std::lock_guard<std::mutex> lk(mu_);
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    for (const auto& [fam, cache] : caches_) {
        std::ofstream out(std::filesystem::path(cache_dir) / family_file_name(fam),
                          std::ios::binary | std::ios::trunc);
        if (out) cache->dump(out);
    }
}

MultiplicityResult kronecker(Engine& eng, const Partition& lam, const Partition& mu,
                             const Partition& nu) {
    require_partition(lam, "kronecker");
    require_partition(mu, "kronecker");
    require_partition(nu, "kronecker");
    const int64_t N = part_size(lam);
    if (part_size(mu) != N || part_size(nu) != N)
        throw domain_error("kronecker: arguments have different sizes");
    if (!eng.budget.allows_kron(N))
        throw budget_error("kronecker: size " + std::to_string(N) +
                           " exceeds the class-sum budget of " +
                           std::to_string(eng.budget.kron_max_n) + " (use --force)");
    if (N == 0) return {mpz_class(1), "character-sum", 0};

    /* most restrictive shape first, so zero characters cut the work early */
    const Partition* shapes[3] = {&lam, &mu, &nu};
    std::stable_sort(shapes, shapes + 3, [](const Partition* a, const Partition* b) {
        return first_hook_bound(*a) < first_hook_bound(*b);
    });
    const int64_t bound = first_hook_bound(*shapes[0]);

    const std::vector<Partition> classes = partitions_of(N, bound, -1);
    CharacterCache& c0 = eng.family_cache(*shapes[0]);
    CharacterCache& c1 = eng.family_cache(*shapes[1]);
    CharacterCache& c2 = eng.family_cache(*shapes[2]);
    const mpz_class Nfac = factorial(N);

    const int T = std::max(1, std::min<int>(eng.threads, static_cast<int>(classes.size()) + 1));
    std::vector<mpz_class> partial(static_cast<size_t>(T), mpz_class(0));
    std::vector<uint64_t> counts(static_cast<size_t>(T), 0);

    auto worker = [&](int w) {
        mpz_class local = 0;
        uint64_t cnt = 0;
        for (size_t i = static_cast<size_t>(w); i < classes.size(); i += static_cast<size_t>(T)) {
            const Partition& rho = classes[i];
            ++cnt;
            mpz_class x0 = character(*shapes[0], rho, c0);
            if (x0 == 0) continue;
            mpz_class x1 = (*shapes[1] == *shapes[0]) ? x0 : character(*shapes[1], rho, c1);
            if (x1 == 0) continue;
            mpz_class x2 = (*shapes[2] == *shapes[0])
                               ? x0
                               : ((*shapes[2] == *shapes[1]) ? x1 : character(*shapes[2], rho, c2));
            if (x2 == 0) continue;
            local += (Nfac / centralizer_size(rho)) * x0 * x1 * x2;
        }
        partial[static_cast<size_t>(w)] = std::move(local);
        counts[static_cast<size_t>(w)] = cnt;
    };

    if (T == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(T));
        for (int w = 0; w < T; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }

    mpz_class total = 0;
    uint64_t visited = 0;
    for (int w = 0; w < T; ++w) {
        total += partial[static_cast<size_t>(w)];
        visited += counts[static_cast<size_t>(w)];
    }
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), total.get_mpz_t(), Nfac.get_mpz_t());
    if (r != 0 || q < 0) throw verify_error("kronecker: class sum is not a valid inner product");
    return {q, "character-sum", visited};
}

MultiplicityResult lr_coefficient(Engine& eng, const Partition& lam, const Partition& mu,
                                  const Partition& nu) {
    require_partition(lam, "lr_coefficient");
    require_partition(mu, "lr_coefficient");
    require_partition(nu, "lr_coefficient");
    const int64_t N = part_size(lam);
    if (!eng.budget.allows_kron(N))
        throw budget_error("lr_coefficient: size " + std::to_string(N) +
                           " exceeds the class-sum budget of " +
                           std::to_string(eng.budget.kron_max_n) + " (use --force)");
    MultiplicityResult res{mpz_class(0), "lr-tableaux", 0};
    if (part_size(mu) + part_size(nu) != N) return res;
    if (!contains(lam, mu)) return res;
    if (nu.empty()) {
        res.value = 1;  /* lam == mu at this point */
        return res;
    }

    /* cells of lam/mu in reading-word order: top to bottom, right to left */
    struct Cell {
        int row;
        int64_t col;
    };
    std::vector<Cell> cells;
    for (size_t r = 0; r < lam.size(); ++r) {
        const int64_t lo = (r < mu.size()) ? mu[r] : 0;
        for (int64_t c = lam[r] - 1; c >= lo; --c)
            cells.push_back({static_cast<int>(r), c});
    }

    const int nv = static_cast<int>(nu.size());
    std::vector<int64_t> counts(static_cast<size_t>(nv), 0);
    std::vector<std::vector<int>> grid(lam.size());
    for (size_t r = 0; r < lam.size(); ++r) grid[r].assign(static_cast<size_t>(lam[r]), 0);

    mpz_class tableaux = 0;
    uint64_t nodes = 0;
    std::function<void(size_t)> fill = [&](size_t idx) {
        if (idx == cells.size()) {
            ++tableaux;
            return;
        }
        const auto [r, c] = cells[idx];
        /* weakly increasing along the row: bounded by the right neighbour */
        int hi = nv;
        if (c + 1 < lam[static_cast<size_t>(r)]) hi = grid[static_cast<size_t>(r)][static_cast<size_t>(c + 1)];
        /* strictly increasing down the column */
        int lo = 1;
        if (r > 0 && c >= ((static_cast<size_t>(r - 1) < mu.size()) ? mu[static_cast<size_t>(r - 1)] : 0))
            lo = grid[static_cast<size_t>(r - 1)][static_cast<size_t>(c)] + 1;
        for (int v = lo; v <= hi; ++v) {
            if (counts[static_cast<size_t>(v - 1)] >= nu[static_cast<size_t>(v - 1)]) continue;
            /* lattice word: prefix counts stay weakly decreasing in v */
            if (v > 1 && counts[static_cast<size_t>(v - 2)] < counts[static_cast<size_t>(v - 1)] + 1)
                continue;
            ++nodes;
            counts[static_cast<size_t>(v - 1)] += 1;
            grid[static_cast<size_t>(r)][static_cast<size_t>(c)] = v;
            fill(idx + 1);
            counts[static_cast<size_t>(v - 1)] -= 1;
        }
        grid[static_cast<size_t>(r)][static_cast<size_t>(c)] = 0;
    };
    fill(0);
    res.value = tableaux;
    res.classes_visited = nodes;
    return res;
}

MultiplicityResult rect_complement_lr(Engine& eng, const Partition& delta,
                                      const Partition& gamma, int64_t d, int64_t n) {
    (void)eng;
    require_partition(delta, "rect_complement_lr");
    require_partition(gamma, "rect_complement_lr");
    if (d < 0 || n < 0) throw domain_error("rect_complement_lr: negative rectangle");
    MultiplicityResult res{mpz_class(0), "rect-complement", 0};
    if (part_length(delta) > d || part_length(gamma) > d) return res;
    if ((!delta.empty() && delta[0] > n) || (!gamma.empty() && gamma[0] > n)) return res;
    for (int64_t i = 1; i <= d; ++i) {
        const int64_t di = (static_cast<size_t>(i) <= delta.size()) ? delta[static_cast<size_t>(i - 1)] : 0;
        const int64_t gj = (static_cast<size_t>(d - i + 1) <= gamma.size())
                               ? gamma[static_cast<size_t>(d - i)] : 0;
        if (di + gj != n) return res;
    }
    res.value = 1;
    return res;
}

mpz_class littlewood_hook_rhs(Engine& eng, const Partition& lam, const Partition& mu,
                              int64_t k) {
    require_partition(lam, "littlewood_hook_rhs");
    require_partition(mu, "littlewood_hook_rhs");
    const int64_t N = part_size(lam);
    if (part_size(mu) != N) throw domain_error("littlewood_hook_rhs: size mismatch");
    if (k < 0 || k > N) throw domain_error("littlewood_hook_rhs: k out of range");
    mpz_class acc = 0;
    for (const Partition& theta : partitions_of(k)) {
        const Partition theta_t = transpose(theta);
        if (!contains(lam, theta) || !contains(mu, theta_t)) continue;
        for (const Partition& tau : partitions_of(N - k)) {
            const mpz_class a = lr_coefficient(eng, lam, theta, tau).value;
            if (a == 0) continue;
            acc += a * lr_coefficient(eng, mu, theta_t, tau).value;
        }
    }
    return acc;
}

MultiplicityResult plethysm_a(Engine& eng, const Partition& lam, int64_t d, int64_t n) {
    require_partition(lam, "plethysm_a");
    if (d < 0 || n < 0) throw domain_error("plethysm_a: negative parameters");
    if (!eng.budget.allows_pleth(checked_mul(d, n)))
        throw budget_error("plethysm_a: d*n = " + std::to_string(d * n) +
                           " exceeds the plethysm budget of " +
                           std::to_string(eng.budget.pleth_max_dn) + " (use --force)");
    if (part_size(lam) != d * n) return {mpz_class(0), "plethysm-p-basis", 0};

    /* h_d[h_n]: run over sigma |- d sharing prefix products of p_r[h_n] */
    const PowerSumElement hn = complete_homogeneous(n);
    std::vector<PowerSumElement> P(static_cast<size_t>(d) + 1);
    for (int64_t r = 1; r <= d; ++r) P[static_cast<size_t>(r)] = plethystic_substitute(hn, r);

    PowerSumElement F;
    F.degree = d * n;
    Partition sigma;
    std::function<void(int64_t, int64_t, const PowerSumElement&)> rec =
        [&](int64_t rem, int64_t maxp, const PowerSumElement& acc) {
            if (rem == 0) {
                const mpq_class inv_z =
                    mpq_class(1) / mpq_class(centralizer_size(sigma));
                for (const auto& [idx, c] : acc.terms) F.insert_term(idx, c * inv_z);
                return;
            }
            for (int64_t p = std::min(rem, maxp); p >= 1; --p) {
                sigma.push_back(p);
                rec(rem - p, p, powersum_product(acc, P[static_cast<size_t>(p)]));
                sigma.pop_back();
            }
        };
    PowerSumElement unit;
    unit.degree = 0;
    unit.terms.emplace(Partition{}, mpq_class(1));
    rec(d, d, unit);

    const mpq_class val = schur_coefficient(F, lam, eng.family_cache(lam));
    if (val.get_den() != 1)
        throw verify_error("plethysm_a: extracted coefficient is not an integer");
    return {val.get_num(), "plethysm-p-basis", F.terms.size()};
}

MultiplicityResult limit_a_rho_d(Engine& eng, const Partition& rho, int64_t d) {
    require_partition(rho, "limit_a_rho_d");
    if (d < 1) throw domain_error("limit_a_rho_d: d must be >= 1");
    if (d == 1) {
        /* g(lam, 1^m, 1^m) picks out the one-row shape */
        return {mpz_class(rho.empty() ? 1 : 0), "stabilized-kronecker", 0};
    }
    const int64_t rows = std::max<int64_t>(part_size(rho), 1);
    const Partition lam = pad(rho, checked_mul(rows, d));
    const Partition rectangle = rect(rows, d);
    MultiplicityResult res = kronecker(eng, lam, rectangle, rectangle);
    res.method = "stabilized-kronecker";
    return res;
}

MultiplicityResult limit_a_rho(Engine& eng, const Partition& rho) {
    return limit_a_rho_d(eng, rho, std::max<int64_t>(part_size(rho), 1));
}

}  // namespace kf
