#pragma once

// Brute-force reference implementations used only by tests. They enumerate
// individual strings and share no code path with the composition-class
// machinery they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <tuple>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Str = std::vector<std::uint32_t>;

inline std::vector<Str> all_strings(std::size_t a, std::size_t len) {
    std::vector<Str> out;
    Str s(len, 0);
    while (true) {
        out.push_back(s);
        std::size_t i = len;
        while (i > 0 && s[i - 1] == a - 1) s[--i] = 0;
        if (i == 0) break;
        ++s[i - 1];
    }
    return out;
}

inline std::vector<std::uint32_t> tally(const Str& s, std::size_t a) {
    std::vector<std::uint32_t> c(a, 0);
    for (auto x : s) ++c[x];
    return c;
}

/// -sum_j log2(n_{s_j} / N), one term per position.
inline double emp_info(const Str& s, std::size_t a) {
    const auto c = tally(s, a);
    double bits = 0.0;
    for (auto x : s) bits -= std::log2(static_cast<double>(c[x]) / static_cast<double>(s.size()));
    return bits;
}

inline mpz_class product_key(const Str& s, std::size_t a) {
    mpz_class p = 1;
    for (auto c : tally(s, a)) {
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), c, c);
        p *= t;
    }
    return p;
}

/// All strings of length len in the shaping order: descending prod n^n,
/// then ascending count vector, then lexicographic string.
inline std::vector<Str> sorted_strings(std::size_t a, std::size_t len) {
    auto strings = all_strings(a, len);
    struct Keyed {
        mpz_class product;
        std::vector<std::uint32_t> counts;
        Str s;
    };
    std::vector<Keyed> keyed;
    for (auto& s : strings) keyed.push_back({product_key(s, a), tally(s, a), s});
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& l, const Keyed& r) {
        if (l.product != r.product) return l.product > r.product;
        return std::tie(l.counts, l.s) < std::tie(r.counts, r.s);
    });
    std::vector<Str> out;
    for (auto& k : keyed) out.push_back(k.s);
    return out;
}

inline std::uint64_t ipow(std::uint64_t a, std::uint64_t n) {
    std::uint64_t r = 1;
    while (n--) r *= a;
    return r;
}

inline double mean_info(const std::vector<Str>& strings, std::size_t a, std::size_t count) {
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) sum += emp_info(strings[i], a);
    return sum / static_cast<double>(count);
}

}  // namespace oracle
