#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace sst {

/// Arbitrary-precision natural number used for class sizes and ranks.
using BigInt = mpz_class;

inline BigInt from_u64(std::uint64_t v) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return r;
}

inline std::uint64_t to_u64(const BigInt& v) {
    std::uint64_t r = 0;
    std::size_t words = 0;
    mpz_export(&r, &words, 1, sizeof(r), 0, 0, v.get_mpz_t());
    return words == 0 ? 0 : r;
}

inline bool fits_u64(const BigInt& v) {
    return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline BigInt ipow(std::uint64_t base, std::uint64_t exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
    return r;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

/// num / den as a double, without overflowing for operands beyond 2^1024.
inline double ratio(const BigInt& num, const BigInt& den) {
    signed long en = 0;
    signed long ed = 0;
    double mn = mpz_get_d_2exp(&en, num.get_mpz_t());
    double md = mpz_get_d_2exp(&ed, den.get_mpz_t());
    return std::ldexp(mn / md, static_cast<int>(en - ed));
}

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

}  // namespace sst
