#include "sst/composition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sst/errors.hpp"

namespace sst {

namespace {

// Factorial tables grow quadratically in bits; past this length class sizes
// are computed directly.
constexpr std::uint64_t kFactorialTableLimit = 4096;

long double log2_factorial(std::uint64_t n) {
    return std::lgamma(static_cast<long double>(n) + 1.0L) / std::log(2.0L);
}

// Non-increasing sequences of length a summing to n, each padded with zeros.
void collect_partitions(std::uint64_t remaining, Count max_part, std::size_t slot,
                        std::vector<Count>& current, std::vector<std::vector<Count>>& out) {
    const std::size_t a = current.size();
    if (remaining == 0) {
        std::fill(current.begin() + static_cast<std::ptrdiff_t>(slot), current.end(), 0);
        out.push_back(current);
        return;
    }
    if (slot == a) return;
    const std::uint64_t slots_left = a - slot;
    const Count hi = static_cast<Count>(std::min<std::uint64_t>(max_part, remaining));
    // The remaining slots can hold at most slots_left * part.
    const Count lo = static_cast<Count>((remaining + slots_left - 1) / slots_left);
    for (Count part = hi; part >= lo && part > 0; --part) {
        current[slot] = part;
        collect_partitions(remaining - part, part, slot + 1, current, out);
    }
}

}  // namespace

Composition::Composition(std::vector<Count> counts) : counts_(std::move(counts)) {
    total_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

BigInt multinomial(std::span<const Count> counts) {
    const std::uint64_t n = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    BigInt result;
    mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(n));
    BigInt f;
    for (Count c : counts) {
        if (c < 2) continue;
        mpz_fac_ui(f.get_mpz_t(), c);
        mpz_divexact(result.get_mpz_t(), result.get_mpz_t(), f.get_mpz_t());
    }
    return result;
}

InfoBits info_content_of_composition(std::span<const Count> counts) {
    std::vector<Count> sorted;
    sorted.reserve(counts.size());
    std::uint64_t n = 0;
    for (Count c : counts) {
        n += c;
        if (c > 1) sorted.push_back(c);
    }
    if (n <= 1) return 0.0;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double sum = 0.0;
    for (Count c : sorted) sum += static_cast<double>(c) * std::log2(static_cast<double>(c));
    const double nd = static_cast<double>(n);
    return std::max(0.0, nd * std::log2(nd) - sum);
}

InfoBits literal_info_of_composition(const SourceEnsemble& ensemble, std::span<const Count> counts) {
    if (counts.size() != ensemble.alphabet_size())
        throw std::invalid_argument("composition and ensemble alphabet sizes differ");
    double bits = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] == 0) continue;
        const double p = ensemble.probabilities()[i];
        if (p <= 0.0)
            throw DomainError("symbol " + std::to_string(i) + " has zero probability");
        bits -= static_cast<double>(counts[i]) * std::log2(p);
    }
    return bits;
}

BigInt order_product(std::span<const Count> counts) {
    BigInt product = 1;
    BigInt term;
    for (Count c : counts) {
        if (c < 2) continue;
        mpz_ui_pow_ui(term.get_mpz_t(), c, c);
        product *= term;
    }
    return product;
}

std::strong_ordering exact_compare(const Composition& lhs, const Composition& rhs) {
    if (lhs.total() != rhs.total() || lhs.alphabet_size() != rhs.alphabet_size())
        throw std::invalid_argument("exact_compare requires compositions of equal length and alphabet");
    const int cmp = ::cmp(order_product(lhs.counts()), order_product(rhs.counts()));
    // Larger product, lower information.
    if (cmp > 0) return std::strong_ordering::less;
    if (cmp < 0) return std::strong_ordering::greater;
    return lhs <=> rhs;
}

BigInt composition_count(std::uint64_t n, std::uint64_t a) {
    if (a == 0) return n == 0 ? 1 : 0;
    return binomial(n + a - 1, a - 1);
}

double class_weight(const SourceEnsemble& ensemble, std::span<const Count> counts) {
    if (counts.size() != ensemble.alphabet_size())
        throw std::invalid_argument("composition and ensemble alphabet sizes differ");
    std::uint64_t n = 0;
    long double log2_weight = 0.0L;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const Count c = counts[i];
        if (c == 0) continue;
        const long double p = ensemble.probabilities()[i];
        if (p <= 0.0L) return 0.0;
        n += c;
        log2_weight += static_cast<long double>(c) * std::log2(p) - log2_factorial(c);
    }
    log2_weight += log2_factorial(n);
    return static_cast<double>(std::exp2(log2_weight));
}

CompositionRange::CompositionRange(std::uint64_t n, std::size_t a) : n_(n), a_(a) {
    if (a == 0) throw std::invalid_argument("alphabet size must be positive");
    if (n > std::numeric_limits<Count>::max()) throw std::invalid_argument("length too large");
}

CompositionRange::iterator CompositionRange::begin() const {
    iterator it;
    it.counts_.assign(a_, 0);
    it.counts_[0] = static_cast<Count>(n_);
    it.done_ = false;
    return it;
}

CompositionRange::iterator& CompositionRange::iterator::operator++() {
    const std::size_t a = counts_.size();
    // Last slot before the final one that still holds something.
    std::size_t j = a - 1;
    while (j > 0 && counts_[j - 1] == 0) --j;
    if (j == 0) {
        done_ = true;
        return *this;
    }
    --j;
    Count tail = 0;
    for (std::size_t i = j + 1; i < a; ++i) {
        tail += counts_[i];
        counts_[i] = 0;
    }
    --counts_[j];
    counts_[j + 1] = tail + 1;
    return *this;
}

std::vector<std::uint32_t> product_tiers(const std::vector<std::vector<Count>>& multisets) {
    std::vector<BigInt> products;
    products.reserve(multisets.size());
    for (const auto& m : multisets) products.push_back(order_product(m));

    std::vector<std::size_t> order(multisets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return ::cmp(products[l], products[r]) > 0; });

    std::vector<std::uint32_t> tiers(multisets.size());
    std::uint32_t tier = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i > 0 && products[order[i]] != products[order[i - 1]]) ++tier;
        tiers[order[i]] = tier;
    }
    return tiers;
}

BigInt SortedCompositions::class_count(std::size_t i) const {
    if (factorials_.empty()) return multinomial(counts(i));
    BigInt result = factorials_[n_];
    for (Count c : counts(i)) {
        if (c < 2) continue;
        mpz_divexact(result.get_mpz_t(), result.get_mpz_t(), factorials_[c].get_mpz_t());
    }
    return result;
}

SortedCompositions sorted_compositions(std::uint64_t n, std::size_t a, std::uint64_t cap) {
    if (a == 0) throw std::invalid_argument("alphabet size must be positive");
    if (n > std::numeric_limits<Count>::max()) throw std::invalid_argument("length too large");
    const BigInt total = composition_count(n, a);
    if (total > from_u64(cap))
        throw ResourceError("C(" + std::to_string(n + a - 1) + "," + std::to_string(a - 1) + ") = " +
                            to_string(total) + " compositions exceeds the cap of " + std::to_string(cap));

    // Order the multisets (partitions of n into at most a parts) exactly, then
    // expand every tier into its distinct permutations in lexicographic order.
    std::vector<std::vector<Count>> partitions;
    std::vector<Count> current(a, 0);
    collect_partitions(n, static_cast<Count>(n), 0, current, partitions);
    const auto tiers = product_tiers(partitions);

    std::vector<std::size_t> by_tier(partitions.size());
    std::iota(by_tier.begin(), by_tier.end(), std::size_t{0});
    std::stable_sort(by_tier.begin(), by_tier.end(),
                     [&](std::size_t l, std::size_t r) { return tiers[l] < tiers[r]; });

    SortedCompositions out;
    out.n_ = n;
    out.a_ = a;
    const std::size_t classes = to_u64(total);
    out.flat_.reserve(classes * a);
    out.info_.reserve(classes);
    out.tier_.reserve(classes);

    std::vector<std::vector<Count>> group;
    for (std::size_t g = 0; g < by_tier.size();) {
        const std::uint32_t tier = tiers[by_tier[g]];
        const InfoBits info = info_content_of_composition(partitions[by_tier[g]]);
        std::size_t members = 0;
        group.clear();
        for (; g < by_tier.size() && tiers[by_tier[g]] == tier; ++g, ++members) {
            std::vector<Count> perm = partitions[by_tier[g]];
            std::sort(perm.begin(), perm.end());
            do {
                group.push_back(perm);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        if (members > 1) std::sort(group.begin(), group.end());
        for (const auto& c : group) {
            out.flat_.insert(out.flat_.end(), c.begin(), c.end());
            out.info_.push_back(info);
            out.tier_.push_back(tier);
        }
    }

    if (n > kFactorialTableLimit) return out;
    out.factorials_.resize(n + 1);
    out.factorials_[0] = 1;
    for (std::uint64_t i = 1; i <= n; ++i) out.factorials_[i] = out.factorials_[i - 1] * static_cast<unsigned long>(i);
    return out;
}

}  // namespace sst
