#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "sst/bigint.hpp"
#include "sst/composition.hpp"
#include "sst/source_model.hpp"

namespace sst {

/// Position of a string in the information order of all strings of its length.
using Rank = BigInt;

/// Parameters of the shaping transform from length n to length n+k.
struct ShapingParameters {
    std::size_t alphabet_size = 2;
    std::uint64_t length = 1;
    std::uint64_t order = 1;

    /// Throws std::invalid_argument unless a >= 2, n >= 1, k >= 1, and
    /// ResourceError if either length exceeds the composition cap.
    void validate(std::uint64_t cap = kDefaultCompositionCap) const;
    std::uint64_t shaped_length() const noexcept { return length + order; }
};

/// Sorted classes of one (length, alphabet) pair with exact prefix sums of
/// their sizes: prefix[i] is the rank of the first string of class i.
class ClassTable {
public:
    ClassTable(std::uint64_t n, std::size_t a, std::uint64_t cap);

    const SortedCompositions& classes() const noexcept { return classes_; }
    const BigInt& prefix(std::size_t i) const { return prefix_[i]; }
    const BigInt& total() const { return prefix_.back(); }
    std::size_t index_of(std::span<const Count> counts) const;
    /// Class whose rank range contains r; r must be below total().
    std::size_t class_of_rank(const BigInt& r) const;

private:
    struct Hash {
        std::size_t operator()(const std::vector<Count>& v) const noexcept;
    };

    SortedCompositions classes_;
    std::vector<BigInt> prefix_;
    std::unordered_map<std::vector<Count>, std::size_t, Hash> index_;
};

/// Process-wide table cache keyed by (n, a). Safe for concurrent use;
/// concurrent first requests may build a table twice but all callers observe
/// the same stored instance.
std::shared_ptr<const ClassTable> class_table(std::uint64_t n, std::size_t a,
                                              std::uint64_t cap = kDefaultCompositionCap);

/// Rank of s among all strings of its length: classes in exact information
/// order, strings lexicographic within a class.
Rank rank(const SymbolString& s);

/// Inverse of rank. Throws DomainError if r >= a^n.
SymbolString unrank(const Rank& r, std::uint64_t n, std::size_t a);

/// The minimal-information shaping bijection: the rank(s)-th string of length n+k.
SymbolString shape(const SymbolString& s, const ShapingParameters& params);

/// Inverse of shape. Throws NotInImageError for strings outside the image.
SymbolString unshape(const SymbolString& y, const ShapingParameters& params);

bool in_image(const SymbolString& y, const ShapingParameters& params);

/// Lexicographic rank of s among the distinct permutations of its own symbols.
BigInt permutation_rank(const SymbolString& s);
/// The r-th distinct permutation (lexicographic) of the multiset `counts`.
SymbolString permutation_unrank(BigInt r, std::span<const Count> counts);

}  // namespace sst
