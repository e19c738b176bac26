#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <memory>
#include <span>
#include <vector>

#include "sst/bigint.hpp"
#include "sst/ensemble.hpp"

namespace sst {

/// Above this many composition classes, exact enumeration is refused.
inline constexpr std::uint64_t kDefaultCompositionCap = 100'000'000;

using Count = std::uint32_t;

/// Per-symbol count vector of a string (its type class).
class Composition {
public:
    Composition() = default;
    explicit Composition(std::vector<Count> counts);

    std::size_t alphabet_size() const noexcept { return counts_.size(); }
    std::uint64_t total() const noexcept { return total_; }
    Count operator[](std::size_t i) const { return counts_[i]; }
    std::span<const Count> counts() const noexcept { return counts_; }

    friend bool operator==(const Composition&, const Composition&) = default;
    /// Lexicographic on the count vector; this is not the information order.
    friend auto operator<=>(const Composition&, const Composition&) = default;

private:
    std::vector<Count> counts_;
    std::uint64_t total_ = 0;
};

/// n! / prod n_a!.
BigInt multinomial(std::span<const Count> counts);
inline BigInt multinomial(const Composition& c) { return multinomial(c.counts()); }

/// n log2 n - sum n_a log2 n_a. The sum runs over the counts in descending
/// order, so the result is bitwise identical for every permutation of `counts`.
InfoBits info_content_of_composition(std::span<const Count> counts);
inline InfoBits info_content_of_composition(const Composition& c) {
    return info_content_of_composition(c.counts());
}

/// sum n_a * (-log2 p_a). Throws DomainError if a used symbol has p_a = 0.
InfoBits literal_info_of_composition(const SourceEnsemble& ensemble, std::span<const Count> counts);

/// prod n_a^n_a with 0^0 = 1. For fixed n a larger product means lower
/// information content.
BigInt order_product(std::span<const Count> counts);

/// Total order by information content (ascending), ties broken by ascending
/// lexicographic count vectors. The information comparison is done on
/// order_product, never on floating point. Throws std::invalid_argument if
/// the totals or alphabet sizes differ.
std::strong_ordering exact_compare(const Composition& lhs, const Composition& rhs);

/// C(n+a-1, a-1).
BigInt composition_count(std::uint64_t n, std::uint64_t a);

/// Probability that a string drawn from `ensemble` has composition `c`:
/// multinomial(c) * prod p_a^n_a.
double class_weight(const SourceEnsemble& ensemble, std::span<const Count> counts);
inline double class_weight(const SourceEnsemble& ensemble, const Composition& c) {
    return class_weight(ensemble, c.counts());
}

/// Forward range over every composition of n into a parts, in descending
/// lexicographic order: (n,0,...,0) first, (0,...,0,n) last.
class CompositionRange {
public:
    CompositionRange(std::uint64_t n, std::size_t a);

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = std::vector<Count>;
        using difference_type = std::ptrdiff_t;
        using pointer = const value_type*;
        using reference = const value_type&;

        iterator() = default;
        reference operator*() const { return counts_; }
        pointer operator->() const { return &counts_; }
        iterator& operator++();
        void operator++(int) { ++*this; }
        bool operator==(const iterator& o) const { return done_ == o.done_; }

    private:
        friend class CompositionRange;
        std::vector<Count> counts_;
        bool done_ = true;
    };

    iterator begin() const;
    iterator end() const { return {}; }

private:
    std::uint64_t n_;
    std::size_t a_;
};

/// Every composition of n into a parts, sorted by exact_compare.
///
/// Storage is one flat count array; class sizes are computed on demand so
/// that millions of classes can be ordered without holding millions of
/// big integers.
class SortedCompositions {
public:
    std::uint64_t length() const noexcept { return n_; }
    std::size_t alphabet_size() const noexcept { return a_; }
    std::size_t size() const noexcept { return info_.size(); }

    std::span<const Count> counts(std::size_t i) const {
        return {flat_.data() + i * a_, a_};
    }
    Composition composition(std::size_t i) const {
        auto c = counts(i);
        return Composition({c.begin(), c.end()});
    }
    InfoBits info(std::size_t i) const { return info_[i]; }
    /// Position of the class among distinct information values; equal
    /// tiers mean exactly equal information content.
    std::uint32_t tier(std::size_t i) const { return tier_[i]; }
    BigInt class_count(std::size_t i) const;

private:
    friend SortedCompositions sorted_compositions(std::uint64_t, std::size_t, std::uint64_t);

    std::uint64_t n_ = 0;
    std::size_t a_ = 0;
    std::vector<Count> flat_;
    std::vector<InfoBits> info_;
    std::vector<std::uint32_t> tier_;
    std::vector<BigInt> factorials_;
};

/// Throws ResourceError if C(n+a-1, a-1) exceeds `cap`.
SortedCompositions sorted_compositions(std::uint64_t n, std::size_t a,
                                       std::uint64_t cap = kDefaultCompositionCap);

/// Dense ranks of count multisets by descending order_product.
///
/// Each input is a count vector; permutations of one another share a rank,
/// as do distinct multisets whose products coincide. Ranks start at 0 for
/// the largest product (lowest information).
std::vector<std::uint32_t> product_tiers(const std::vector<std::vector<Count>>& multisets);

}  // namespace sst
