#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sst/composition.hpp"
#include "sst/ensemble.hpp"

namespace sst {

/// A finite sequence of symbol indices over an alphabet of known size.
class SymbolString {
public:
    SymbolString() = default;
    /// Throws DomainError if a symbol is >= alphabet_size.
    SymbolString(std::vector<Symbol> symbols, std::size_t alphabet_size);

    /// Parses ASCII digits ('0'..'9'); requires alphabet_size <= 10.
    static SymbolString from_digits(std::string_view digits, std::size_t alphabet_size);
    /// Digits for alphabets up to 10, comma-separated indices otherwise.
    std::string to_text() const;

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    std::size_t alphabet_size() const noexcept { return alphabet_size_; }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    std::span<const Symbol> symbols() const noexcept { return symbols_; }

    friend bool operator==(const SymbolString&, const SymbolString&) = default;

private:
    std::vector<Symbol> symbols_;
    std::size_t alphabet_size_ = 0;
};

/// prod p(s_j).
double string_probability(const SourceEnsemble& ensemble, const SymbolString& s);

/// -sum log2 p(s_j). Throws DomainError if some s_j has probability zero.
InfoBits literal_information_content(const SourceEnsemble& ensemble, const SymbolString& s);

/// -sum log2(n_{s_j} / N), the string measured against its own frequencies.
/// Throws std::invalid_argument for an empty string.
InfoBits empirical_information_content(const SymbolString& s);

Composition composition_of(const SymbolString& s);

/// Dispatches on the interpretation; `ensemble` is ignored for `empirical`.
InfoBits information_content(const SourceEnsemble& ensemble, const SymbolString& s,
                             Interpretation interpretation);

}  // namespace sst
