#include "sst/shaping_map.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

#include "sst/errors.hpp"

namespace sst {

void ShapingParameters::validate(std::uint64_t cap) const {
    if (alphabet_size < 2) throw std::invalid_argument("alphabet size must be at least 2");
    if (length < 1) throw std::invalid_argument("length must be at least 1");
    if (order < 1) throw std::invalid_argument("shaping order must be at least 1");
    for (std::uint64_t len : {length, shaped_length()}) {
        const BigInt classes = composition_count(len, alphabet_size);
        if (classes > from_u64(cap))
            throw ResourceError(to_string(classes) + " compositions of length " + std::to_string(len) +
                                " exceed the cap of " + std::to_string(cap));
    }
}

std::size_t ClassTable::Hash::operator()(const std::vector<Count>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Count c : v) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

ClassTable::ClassTable(std::uint64_t n, std::size_t a, std::uint64_t cap)
    : classes_(sorted_compositions(n, a, cap)) {
    prefix_.reserve(classes_.size() + 1);
    prefix_.emplace_back(0);
    index_.reserve(classes_.size());
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        prefix_.push_back(prefix_.back() + classes_.class_count(i));
        const auto c = classes_.counts(i);
        index_.emplace(std::vector<Count>(c.begin(), c.end()), i);
    }
}

std::size_t ClassTable::index_of(std::span<const Count> counts) const {
    const auto it = index_.find(std::vector<Count>(counts.begin(), counts.end()));
    if (it == index_.end()) throw std::invalid_argument("composition does not belong to this table");
    return it->second;
}

std::size_t ClassTable::class_of_rank(const BigInt& r) const {
    // First prefix strictly greater than r, minus one.
    const auto it = std::upper_bound(prefix_.begin(), prefix_.end(), r);
    return static_cast<std::size_t>(it - prefix_.begin()) - 1;
}

std::shared_ptr<const ClassTable> class_table(std::uint64_t n, std::size_t a, std::uint64_t cap) {
    static std::mutex mutex;
    static std::map<std::pair<std::uint64_t, std::size_t>, std::shared_ptr<const ClassTable>> cache;
    const auto key = std::make_pair(n, a);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto built = std::make_shared<const ClassTable>(n, a, cap);
    std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(built)).first->second;
}

BigInt permutation_rank(const SymbolString& s) {
    std::vector<Count> left(s.alphabet_size(), 0);
    for (Symbol x : s.symbols()) ++left[x];
    BigInt perms = multinomial(left);
    BigInt r = 0;
    auto remaining = static_cast<unsigned long>(s.size());
    for (Symbol x : s.symbols()) {
        // perms * left[b] / remaining strings continue with symbol b here.
        for (Symbol b = 0; b < x; ++b) {
            if (left[b] == 0) continue;
            BigInt start_with_b = perms * left[b];
            mpz_divexact_ui(start_with_b.get_mpz_t(), start_with_b.get_mpz_t(), remaining);
            r += start_with_b;
        }
        perms *= left[x];
        mpz_divexact_ui(perms.get_mpz_t(), perms.get_mpz_t(), remaining);
        --left[x];
        --remaining;
    }
    return r;
}

SymbolString permutation_unrank(BigInt r, std::span<const Count> counts) {
    std::vector<Count> left(counts.begin(), counts.end());
    BigInt perms = multinomial(left);
    if (sgn(r) < 0 || r >= perms) throw DomainError("permutation rank out of range");
    unsigned long remaining = 0;
    for (Count c : left) remaining += c;
    std::vector<Symbol> out;
    out.reserve(remaining);
    BigInt start_with_b;
    while (remaining > 0) {
        for (Symbol b = 0; b < left.size(); ++b) {
            if (left[b] == 0) continue;
            start_with_b = perms * left[b];
            mpz_divexact_ui(start_with_b.get_mpz_t(), start_with_b.get_mpz_t(), remaining);
            if (r < start_with_b) {
                out.push_back(b);
                perms = start_with_b;
                --left[b];
                break;
            }
            r -= start_with_b;
        }
        --remaining;
    }
    return SymbolString(std::move(out), counts.size());
}

Rank rank(const SymbolString& s) {
    const auto table = class_table(s.size(), s.alphabet_size());
    const Composition c = composition_of(s);
    return table->prefix(table->index_of(c.counts())) + permutation_rank(s);
}

SymbolString unrank(const Rank& r, std::uint64_t n, std::size_t a) {
    const auto table = class_table(n, a);
    if (sgn(r) < 0 || r >= table->total())
        throw DomainError("rank " + to_string(r) + " is outside [0, " + std::to_string(a) + "^" +
                          std::to_string(n) + ")");
    const std::size_t cls = table->class_of_rank(r);
    return permutation_unrank(r - table->prefix(cls), table->classes().counts(cls));
}

SymbolString shape(const SymbolString& s, const ShapingParameters& params) {
    params.validate();
    if (s.size() != params.length || s.alphabet_size() != params.alphabet_size)
        throw std::invalid_argument("input string does not match the shaping parameters");
    return unrank(rank(s), params.shaped_length(), params.alphabet_size);
}

bool in_image(const SymbolString& y, const ShapingParameters& params) {
    params.validate();
    if (y.size() != params.shaped_length() || y.alphabet_size() != params.alphabet_size)
        throw std::invalid_argument("shaped string does not match the shaping parameters");
    return rank(y) < ipow(params.alphabet_size, params.length);
}

SymbolString unshape(const SymbolString& y, const ShapingParameters& params) {
    params.validate();
    if (y.size() != params.shaped_length() || y.alphabet_size() != params.alphabet_size)
        throw std::invalid_argument("shaped string does not match the shaping parameters");
    const Rank r = rank(y);
    if (r >= ipow(params.alphabet_size, params.length))
        throw NotInImageError("string " + y.to_text() + " is not the image of any length-" +
                              std::to_string(params.length) + " string");
    return unrank(r, params.length, params.alphabet_size);
}

}  // namespace sst
