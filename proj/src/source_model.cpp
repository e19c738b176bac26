#include "sst/source_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sst/errors.hpp"
#include "sst/numeric.hpp"

namespace sst {

SourceEnsemble::SourceEnsemble(std::vector<double> probabilities) : probabilities_(std::move(probabilities)) {
    if (probabilities_.empty()) throw std::invalid_argument("ensemble needs at least one symbol");
    double sum = 0.0;
    for (double p : probabilities_) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probabilities must lie in [0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("probabilities must sum to 1");
    uniform_ = std::all_of(probabilities_.begin(), probabilities_.end(),
                           [&](double p) { return p == probabilities_.front(); });
}

SourceEnsemble SourceEnsemble::uniform(std::size_t alphabet_size) {
    if (alphabet_size == 0) throw std::invalid_argument("alphabet size must be positive");
    SourceEnsemble e(std::vector<double>(alphabet_size, 1.0 / static_cast<double>(alphabet_size)));
    e.uniform_ = true;
    return e;
}

InfoBits entropy(const SourceEnsemble& ensemble) {
    double h = 0.0;
    for (double p : ensemble.probabilities())
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

SymbolString::SymbolString(std::vector<Symbol> symbols, std::size_t alphabet_size)
    : symbols_(std::move(symbols)), alphabet_size_(alphabet_size) {
    if (alphabet_size_ == 0) throw std::invalid_argument("alphabet size must be positive");
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i] >= alphabet_size_)
            throw DomainError("symbol " + std::to_string(symbols_[i]) + " at position " + std::to_string(i) +
                              " is outside an alphabet of size " + std::to_string(alphabet_size_));
}

SymbolString SymbolString::from_digits(std::string_view digits, std::size_t alphabet_size) {
    if (alphabet_size > 10) throw std::invalid_argument("digit strings need an alphabet of at most 10");
    std::vector<Symbol> symbols;
    symbols.reserve(digits.size());
    for (char ch : digits) {
        if (ch < '0' || ch > '9') throw DomainError(std::string("not a digit: '") + ch + "'");
        symbols.push_back(static_cast<Symbol>(ch - '0'));
    }
    return SymbolString(std::move(symbols), alphabet_size);
}

std::string SymbolString::to_text() const {
    std::string out;
    if (alphabet_size_ <= 10) {
        out.reserve(symbols_.size());
        for (Symbol s : symbols_) out.push_back(static_cast<char>('0' + s));
        return out;
    }
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(symbols_[i]);
    }
    return out;
}

double string_probability(const SourceEnsemble& ensemble, const SymbolString& s) {
    if (s.alphabet_size() != ensemble.alphabet_size())
        throw std::invalid_argument("string and ensemble alphabet sizes differ");
    double p = 1.0;
    for (Symbol x : s.symbols()) p *= ensemble.probability(x);
    return p;
}

InfoBits literal_information_content(const SourceEnsemble& ensemble, const SymbolString& s) {
    if (s.alphabet_size() != ensemble.alphabet_size())
        throw std::invalid_argument("string and ensemble alphabet sizes differ");
    std::vector<std::size_t> counts(ensemble.alphabet_size(), 0);
    for (Symbol x : s.symbols()) ++counts[x];
    for (std::size_t x = 0; x < counts.size(); ++x)
        if (counts[x] > 0 && ensemble.probability(static_cast<Symbol>(x)) <= 0.0)
            throw DomainError("symbol " + std::to_string(x) + " has zero probability");
    if (ensemble.is_uniform())
        return static_cast<double>(s.size()) * std::log2(static_cast<double>(ensemble.alphabet_size()));
    CompensatedSum bits;
    for (std::size_t x = 0; x < counts.size(); ++x)
        if (counts[x] > 0)
            bits.add(-static_cast<double>(counts[x]) * std::log2(ensemble.probability(static_cast<Symbol>(x))));
    return bits.value();
}

Composition composition_of(const SymbolString& s) {
    std::vector<Count> counts(s.alphabet_size(), 0);
    for (Symbol x : s.symbols()) ++counts[x];
    return Composition(std::move(counts));
}

InfoBits empirical_information_content(const SymbolString& s) {
    if (s.empty()) throw std::invalid_argument("empirical information of an empty string");
    return info_content_of_composition(composition_of(s));
}

InfoBits information_content(const SourceEnsemble& ensemble, const SymbolString& s,
                             Interpretation interpretation) {
    return interpretation == Interpretation::empirical ? empirical_information_content(s)
                                                       : literal_information_content(ensemble, s);
}

}  // namespace sst
