#include "symfun.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <istream>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <string>

#include "absl/container/flat_hash_map.h"
#include "common.hpp"

namespace kf {

namespace {

void gen_parts(int64_t remaining, int64_t max_part, int64_t max_len_left,
               Partition& scratch, const std::function<void(const Partition&)>& fn) {
    if (remaining == 0) {
        fn(scratch);
        return;
    }
    if (max_len_left <= 0) return;
    for (int64_t p = std::min(remaining, max_part); p >= 1; --p) {
        if (remaining > p * max_len_left) break;  /* smaller parts cannot fit either */
        scratch.push_back(p);
        gen_parts(remaining - p, p, max_len_left - 1, scratch, fn);
        scratch.pop_back();
    }
}

}  // namespace

void partitions_for_each(int64_t N, int64_t max_part, int64_t max_length,
                         const std::function<void(const Partition&)>& fn) {
    if (N < 0) throw domain_error("partitions_for_each: negative N");
    if (max_part < 0) max_part = N;
    if (max_length < 0) max_length = N;
    Partition scratch;
    scratch.reserve(static_cast<size_t>(std::min<int64_t>(N, max_length)));
    gen_parts(N, max_part, max_length, scratch, fn);
}

std::vector<Partition> partitions_of(int64_t N, int64_t max_part, int64_t max_length) {
    std::vector<Partition> out;
    partitions_for_each(N, max_part, max_length,
                        [&](const Partition& p) { out.push_back(p); });
    return out;
}

mpz_class centralizer_size(const CycleType& rho) {
    require_partition(rho, "centralizer_size");
    mpz_class z = 1;
    size_t i = 0;
    while (i < rho.size()) {
        size_t j = i;
        while (j < rho.size() && rho[j] == rho[i]) ++j;
        const auto mult = static_cast<unsigned long>(j - i);
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(rho[i]), mult);
        mpz_class fac;
        mpz_fac_ui(fac.get_mpz_t(), mult);
        z *= pw * fac;
        i = j;
    }
    return z;
}

mpz_class factorial(int64_t n) {
    if (n < 0) throw domain_error("factorial: negative argument");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

struct CharacterCache::Impl {
    mutable std::shared_mutex mu;
    absl::flat_hash_map<Partition, uint32_t> ids;
    std::vector<Partition> by_id;
    absl::flat_hash_map<uint64_t, mpz_class> memo;
    std::atomic<uint64_t> hit_count{0};
    std::atomic<uint64_t> miss_count{0};

    uint32_t intern(const Partition& p) {
        {
            std::shared_lock<std::shared_mutex> rl(mu);
            auto it = ids.find(p);
            if (it != ids.end()) return it->second;
        }
        std::unique_lock<std::shared_mutex> wl(mu);
        auto [it, fresh] = ids.try_emplace(p, static_cast<uint32_t>(by_id.size()));
        if (fresh) by_id.push_back(p);
        return it->second;
    }

    bool lookup(uint64_t key, mpz_class& out) {
        std::shared_lock<std::shared_mutex> rl(mu);
        auto it = memo.find(key);
        if (it == memo.end()) return false;
        out = it->second;
        return true;
    }

    void store(uint64_t key, const mpz_class& v) {
        std::unique_lock<std::shared_mutex> wl(mu);
        memo.emplace(key, v);
    }
};

CharacterCache::CharacterCache() : impl_(std::make_unique<Impl>()) {}
CharacterCache::~CharacterCache() = default;

uint64_t CharacterCache::hits() const { return impl_->hit_count.load(); }
uint64_t CharacterCache::misses() const { return impl_->miss_count.load(); }

uint64_t CharacterCache::entries() const {
    std::shared_lock<std::shared_mutex> rl(impl_->mu);
    return impl_->memo.size();
}

void CharacterCache::clear() {
    std::unique_lock<std::shared_mutex> wl(impl_->mu);
    impl_->ids.clear();
    impl_->by_id.clear();
    impl_->memo.clear();
    impl_->hit_count = 0;
    impl_->miss_count = 0;
}

namespace {

void put_u32(std::ostream& os, uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& os, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

bool get_u32(std::istream& is, uint32_t& v) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
    return true;
}

bool get_u64(std::istream& is, uint64_t& v) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return true;
}

constexpr char kCacheMagic[5] = {'K', 'F', 'C', 'H', '1'};

}  // namespace

void CharacterCache::dump(std::ostream& os) const {
    std::shared_lock<std::shared_mutex> rl(impl_->mu);
    os.write(kCacheMagic, sizeof(kCacheMagic));
    put_u64(os, impl_->by_id.size());
    for (const Partition& p : impl_->by_id) {
        put_u32(os, static_cast<uint32_t>(p.size()));
        for (int64_t part : p) put_u64(os, static_cast<uint64_t>(part));
    }
    put_u64(os, impl_->memo.size());
    /* deterministic order: sort keys */
    std::vector<uint64_t> keys;
    keys.reserve(impl_->memo.size());
    for (const auto& kv : impl_->memo) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    for (uint64_t k : keys) {
        put_u64(os, k);
        const std::string dec = impl_->memo.find(k)->second.get_str();
        put_u32(os, static_cast<uint32_t>(dec.size()));
        os.write(dec.data(), static_cast<std::streamsize>(dec.size()));
    }
}

bool CharacterCache::load(std::istream& is) {
    char magic[5];
    if (!is.read(magic, 5) || std::memcmp(magic, kCacheMagic, 5) != 0) return false;
    uint64_t nparts = 0;
    if (!get_u64(is, nparts)) return false;
    std::vector<Partition> by_id;
    by_id.reserve(nparts);
    for (uint64_t i = 0; i < nparts; ++i) {
        uint32_t len = 0;
        if (!get_u32(is, len)) return false;
        Partition p(len);
        for (uint32_t j = 0; j < len; ++j) {
            uint64_t part = 0;
            if (!get_u64(is, part)) return false;
            p[j] = static_cast<int64_t>(part);
        }
        if (!is_partition(p)) return false;
        by_id.push_back(std::move(p));
    }
    uint64_t nmemo = 0;
    if (!get_u64(is, nmemo)) return false;
    absl::flat_hash_map<uint64_t, mpz_class> memo;
    memo.reserve(nmemo);
    for (uint64_t i = 0; i < nmemo; ++i) {
        uint64_t key = 0;
        uint32_t len = 0;
        if (!get_u64(is, key) || !get_u32(is, len)) return false;
        std::string dec(len, '\0');
        if (!is.read(dec.data(), static_cast<std::streamsize>(len))) return false;
        if ((key >> 32) >= nparts || (key & 0xffffffffu) >= nparts) return false;
        memo.emplace(key, mpz_class(dec));
    }
    std::unique_lock<std::shared_mutex> wl(impl_->mu);
    impl_->ids.clear();
    impl_->by_id = std::move(by_id);
    for (uint32_t i = 0; i < impl_->by_id.size(); ++i) impl_->ids.emplace(impl_->by_id[i], i);
    impl_->memo = std::move(memo);
    return true;
}

namespace {

/* One border-strip step on the beta set beta[i] = shape[i] + L-1-i
 * (strictly decreasing). Removing a strip of length t means replacing
 * some beta[i] by beta[i]-t when that value is absent; the sign is
 * (-1)^(number of beta entries strictly between the old and new value). */
mpz_class chi_rec(CharacterCache::Impl* C, const Partition& shape,
                  const std::vector<int64_t>& cls, size_t pos,
                  const std::vector<uint32_t>* suffix_ids) {
    if (pos == cls.size()) return 1;

    uint64_t key = 0;
    if (C != nullptr) {
        const uint32_t sid = C->intern(shape);
        key = (static_cast<uint64_t>(sid) << 32) | (*suffix_ids)[pos];
        mpz_class hit;
        if (C->lookup(key, hit)) {
            C->hit_count.fetch_add(1, std::memory_order_relaxed);
            return hit;
        }
        C->miss_count.fetch_add(1, std::memory_order_relaxed);
    }

    const int64_t t = cls[pos];
    const int L = static_cast<int>(shape.size());
    std::vector<int64_t> beta(shape.begin(), shape.end());
    for (int i = 0; i < L; ++i) beta[i] += L - 1 - i;

    mpz_class acc = 0;
    for (int i = 0; i < L; ++i) {
        const int64_t nb = beta[i] - t;
        if (nb < 0) break;
        bool occupied = false;
        int crossed = 0;
        for (int j = i + 1; j < L; ++j) {
            if (beta[j] == nb) {
                occupied = true;
                break;
            }
            if (beta[j] > nb) ++crossed;
        }
        if (occupied) continue;

        /* re-sorted beta with beta[i] -> nb, converted back to a shape */
        Partition child;
        child.reserve(static_cast<size_t>(L));
        std::vector<int64_t> nbeta;
        nbeta.reserve(static_cast<size_t>(L));
        for (int j = 0; j < L; ++j)
            if (j != i) nbeta.push_back(beta[j]);
        auto ins = std::lower_bound(nbeta.begin(), nbeta.end(), nb, std::greater<int64_t>());
        nbeta.insert(ins, nb);
        for (int j = 0; j < L; ++j) {
            const int64_t row = nbeta[static_cast<size_t>(j)] - (L - 1 - j);
            if (row > 0) child.push_back(row);
        }

        const mpz_class sub = chi_rec(C, child, cls, pos + 1, suffix_ids);
        if (crossed % 2 == 0)
            acc += sub;
        else
            acc -= sub;
    }

    if (C != nullptr) C->store(key, acc);
    return acc;
}

mpz_class character_impl(const Partition& lam, const CycleType& rho, CharacterCache* cache) {
    require_partition(lam, "character");
    require_partition(rho, "character");
    if (part_size(lam) != part_size(rho))
        throw domain_error("character: shape and class have different sizes");
    std::vector<int64_t> cls(rho.begin(), rho.end());  /* decreasing */
    std::vector<uint32_t> suffix_ids;
    if (cache != nullptr) {
        suffix_ids.resize(cls.size() + 1);
        for (size_t pos = 0; pos <= cls.size(); ++pos)
            suffix_ids[pos] =
                cache->impl().intern(Partition(cls.begin() + static_cast<long>(pos), cls.end()));
    }
    return chi_rec(cache != nullptr ? &cache->impl() : nullptr, lam, cls, 0,
                   cache != nullptr ? &suffix_ids : nullptr);
}

}  // namespace

mpz_class character(const Partition& lam, const CycleType& rho, CharacterCache& cache) {
    return character_impl(lam, rho, &cache);
}

mpz_class character(const Partition& lam, const CycleType& rho) {
    CharacterCache local;
    return character_impl(lam, rho, &local);
}

mpz_class character_nomemo(const Partition& lam, const CycleType& rho) {
    return character_impl(lam, rho, nullptr);
}

void PowerSumElement::insert_term(const Partition& idx, const mpq_class& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.try_emplace(idx, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

PowerSumElement powersum_product(const PowerSumElement& f, const PowerSumElement& g) {
    PowerSumElement out;
    out.degree = f.degree + g.degree;
    for (const auto& [fi, fc] : f.terms) {
        for (const auto& [gi, gc] : g.terms) {
            Partition merged;
            merged.reserve(fi.size() + gi.size());
            std::merge(fi.begin(), fi.end(), gi.begin(), gi.end(),
                       std::back_inserter(merged), std::greater<int64_t>());
            out.insert_term(merged, fc * gc);
        }
    }
    return out;
}

PowerSumElement plethystic_substitute(const PowerSumElement& f, int64_t r) {
    if (r < 1) throw domain_error("plethystic_substitute: r must be >= 1");
    PowerSumElement out;
    out.degree = checked_mul(f.degree, r);
    for (const auto& [idx, c] : f.terms) out.insert_term(scale(r, idx), c);
    return out;
}

PowerSumElement complete_homogeneous(int64_t n) {
    if (n < 0) throw domain_error("complete_homogeneous: negative degree");
    PowerSumElement out;
    out.degree = n;
    partitions_for_each(n, -1, -1, [&](const Partition& sigma) {
        out.insert_term(sigma, mpq_class(1) / mpq_class(centralizer_size(sigma)));
    });
    return out;
}

mpq_class schur_coefficient(const PowerSumElement& f, const Partition& lam,
                            CharacterCache& cache) {
    require_partition(lam, "schur_coefficient");
    const int64_t N = part_size(lam);
    mpq_class acc = 0;
    for (const auto& [idx, c] : f.terms) {
        if (part_size(idx) != N) continue;
        acc += c * mpq_class(character(lam, idx, cache));
    }
    return acc;
}

mpq_class schur_coefficient(const PowerSumElement& f, const Partition& lam) {
    CharacterCache cache;
    return schur_coefficient(f, lam, cache);
}

}  // namespace kf
