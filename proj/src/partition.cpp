#include "partition.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace kf {

int64_t part_size(const Partition& lam) {
    int64_t s = 0;
    for (int64_t p : lam) s = checked_add(s, p);
    return s;
}

int64_t part_length(const Partition& lam) { return static_cast<int64_t>(lam.size()); }

bool is_partition(const Partition& lam) {
    for (size_t i = 0; i < lam.size(); ++i) {
        if (lam[i] <= 0) return false;
        if (i > 0 && lam[i] > lam[i - 1]) return false;
    }
    return true;
}

void require_partition(const Partition& lam, const char* who) {
    if (!is_partition(lam)) {
        throw domain_error(std::string(who) + ": not a partition: " + partition_to_string(lam));
    }
}

Partition parse_partition(const std::string& text) {
    std::string t;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    }
    if (!t.empty() && (t.front() == '[' || t.front() == '(')) t.erase(t.begin());
    if (!t.empty() && (t.back() == ']' || t.back() == ')')) t.pop_back();
    if (t.empty() || t == "0") return {};

    // Rectangle shorthand: AxB = A rows of width B.
    auto xpos = t.find_first_of("xX");
    if (xpos != std::string::npos) {
        try {
            size_t used1 = 0, used2 = 0;
            int64_t rows = std::stoll(t.substr(0, xpos), &used1);
            std::string rest = t.substr(xpos + 1);
            int64_t width = std::stoll(rest, &used2);
            if (used1 != xpos || used2 != rest.size())
                throw domain_error("parse_partition: bad rectangle shorthand '" + text + "'");
            if (rows < 0 || width < 0)
                throw domain_error("parse_partition: negative rectangle in '" + text + "'");
            if (rows == 0 || width == 0) return {};
            return rect(rows, width);
        } catch (const std::invalid_argument&) {
            throw domain_error("parse_partition: bad rectangle shorthand '" + text + "'");
        } catch (const std::out_of_range&) {
            throw domain_error("parse_partition: rectangle out of range '" + text + "'");
        }
    }

    Partition lam;
    std::stringstream ss(t);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw domain_error("parse_partition: empty part in '" + text + "'");
        try {
            size_t used = 0;
            int64_t p = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            if (p == 0) continue;  // trailing zeros tolerated
            lam.push_back(p);
        } catch (const std::invalid_argument&) {
            throw domain_error("parse_partition: bad part '" + tok + "' in '" + text + "'");
        } catch (const std::out_of_range&) {
            throw domain_error("parse_partition: part out of range in '" + text + "'");
        }
    }
    require_partition(lam, "parse_partition");
    return lam;
}

std::string partition_to_string(const Partition& lam) {
    if (lam.empty()) return "[]";
    std::string out = "[";
    for (size_t i = 0; i < lam.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(lam[i]);
    }
    out += "]";
    return out;
}

Partition rect(int64_t rows, int64_t width) {
    if (rows < 0 || width < 0) throw domain_error("rect: negative dimension");
    if (rows == 0 || width == 0) return {};
    return Partition(static_cast<size_t>(rows), width);
}

Partition transpose(const Partition& lam) {
    require_partition(lam, "transpose");
    if (lam.empty()) return {};
    Partition out(static_cast<size_t>(lam[0]));
    for (int64_t j = 0; j < lam[0]; ++j) {
        int64_t cnt = 0;
        for (int64_t p : lam) {
            if (p > j) ++cnt;
            else break;
        }
        out[static_cast<size_t>(j)] = cnt;
    }
    return out;
}

Partition add(const Partition& lam, const Partition& mu) {
    require_partition(lam, "add");
    require_partition(mu, "add");
    Partition out(std::max(lam.size(), mu.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) {
        int64_t a = i < lam.size() ? lam[i] : 0;
        int64_t b = i < mu.size() ? mu[i] : 0;
        out[i] = checked_add(a, b);
    }
    return out;
}

Partition scale(int64_t a, const Partition& lam) {
    require_partition(lam, "scale");
    if (a < 0) throw domain_error("scale: negative factor");
    if (a == 0) return {};
    Partition out = lam;
    for (int64_t& p : out) p = checked_mul(p, a);
    return out;
}

Partition pad(const Partition& rho, int64_t N) {
    require_partition(rho, "pad");
    int64_t sz = part_size(rho);
    if (N < sz) throw domain_error("pad: target size " + std::to_string(N) +
                                   " below |rho| = " + std::to_string(sz));
    int64_t row = N - sz;
    if (row == 0) {
        if (!rho.empty()) throw domain_error("pad: zero first row over nonempty partition");
        return {};
    }
    if (!rho.empty() && row < rho[0]) {
        throw domain_error("pad: first row " + std::to_string(row) + " shorter than rho_1 = " +
                           std::to_string(rho[0]));
    }
    Partition out;
    out.reserve(rho.size() + 1);
    out.push_back(row);
    out.insert(out.end(), rho.begin(), rho.end());
    return out;
}

Partition strip_first_row(const Partition& lam) {
    require_partition(lam, "strip_first_row");
    if (lam.empty()) return {};
    return Partition(lam.begin() + 1, lam.end());
}

std::map<int64_t, int64_t> column_multiplicities(const Partition& lam) {
    require_partition(lam, "column_multiplicities");
    std::map<int64_t, int64_t> out;
    // Columns 1..lam_1; column j has length #{i : lam_i >= j}. Lengths come
    // in runs: parts equal to lam_i contribute columns of length i.
    Partition t = transpose(lam);
    for (int64_t len : t) out[len] += 1;
    return out;
}

Partition near_hook(int64_t i, int64_t j, const Partition& rho) {
    require_partition(rho, "near_hook");
    if (j < 0)
        throw domain_error("near_hook: j < 0");
    int64_t rho1 = rho.empty() ? 0 : rho[0];
    /* rows below the first are the componentwise sum 1^j + rho, so the
       first row only has to dominate 1 + rho_1 (or rho_1 when j = 0) */
    if (i < (j >= 1 ? 1 + rho1 : std::max<int64_t>(rho1, 1)))
        throw domain_error("near_hook: top row too short for 1^j + rho");
    int64_t depth = std::max(j, part_length(rho));
    Partition out;
    out.reserve(static_cast<size_t>(depth) + 1);
    out.push_back(i);
    for (int64_t t = 0; t < depth; ++t) {
        int64_t below = t < part_length(rho) ? rho[static_cast<size_t>(t)] : 0;
        out.push_back((t < j ? 1 : 0) + below);
    }
    return out;
}

bool is_self_conjugate(const Partition& lam) {
    require_partition(lam, "is_self_conjugate");
    return lam == transpose(lam);
}

bool contains(const Partition& lam, const Partition& mu) {
    if (mu.size() > lam.size()) return false;
    for (size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] > lam[i]) return false;
    }
    return true;
}

}  // namespace kf
