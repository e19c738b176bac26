#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracle.hpp"
#include "sst/errors.hpp"
#include "sst/source_model.hpp"

using namespace sst;

namespace {

SymbolString str(std::initializer_list<Symbol> s, std::size_t a) { return SymbolString(s, a); }

}  // namespace

TEST(Ensemble, RejectsBadProbabilities) {
    EXPECT_THROW(SourceEnsemble({0.5, 0.6}), std::invalid_argument);
    EXPECT_THROW(SourceEnsemble({1.2, -0.2}), std::invalid_argument);
    EXPECT_THROW(SourceEnsemble(std::vector<double>{}), std::invalid_argument);
    EXPECT_NO_THROW(SourceEnsemble({0.25, 0.75}));
}

TEST(Entropy, Examples) {
    EXPECT_DOUBLE_EQ(entropy(SourceEnsemble::uniform(4)), 2.0);
    EXPECT_DOUBLE_EQ(entropy(SourceEnsemble({1.0, 0.0})), 0.0);
    EXPECT_NEAR(entropy(SourceEnsemble({0.9, 0.1})), 0.4690, 5e-5);
}

TEST(StringProbability, Examples) {
    const auto u3 = SourceEnsemble::uniform(3);
    const SymbolString s({0, 1, 2, 0, 1, 2, 0, 1, 2, 0}, 3);
    EXPECT_NEAR(string_probability(u3, s), std::pow(3.0, -10), 1e-20);
    EXPECT_NEAR(string_probability(u3, s), 1.6935e-5, 1e-9);
    EXPECT_DOUBLE_EQ(string_probability(SourceEnsemble({0.5, 0.5}), str({0, 1}, 2)), 0.25);
    EXPECT_NEAR(string_probability(SourceEnsemble({0.9, 0.1}), str({0, 0, 1}, 2)), 0.081, 1e-15);
}

TEST(LiteralInformation, Examples) {
    EXPECT_DOUBLE_EQ(literal_information_content(SourceEnsemble::uniform(2), str({0, 1}, 2)), 2.0);
    EXPECT_DOUBLE_EQ(literal_information_content(SourceEnsemble({1.0, 0.0}), str({0, 0}, 2)), 0.0);
    EXPECT_NEAR(literal_information_content(SourceEnsemble({0.9, 0.1}), str({0, 1}, 2)), 3.4739, 5e-5);
}

TEST(LiteralInformation, ZeroProbabilitySymbolIsDomainError) {
    EXPECT_THROW(literal_information_content(SourceEnsemble({1.0, 0.0}), str({0, 1}, 2)), DomainError);
}

TEST(EmpiricalInformation, Examples) {
    EXPECT_DOUBLE_EQ(empirical_information_content(str({0, 0}, 2)), 0.0);
    EXPECT_DOUBLE_EQ(empirical_information_content(str({0, 1}, 2)), 2.0);
    // "aab"
    EXPECT_NEAR(empirical_information_content(str({0, 0, 1}, 3)), 2.7549, 5e-5);
    double sum = 0.0;
    for (const auto& s : oracle::all_strings(2, 2)) sum += empirical_information_content(SymbolString(s, 2));
    EXPECT_NEAR(sum / 4.0, 1.000, 5e-4);
    EXPECT_THROW(empirical_information_content(SymbolString({}, 2)), std::invalid_argument);
}

TEST(CompositionOf, Examples) {
    EXPECT_EQ(composition_of(str({0, 1, 0, 2}, 3)).counts().size(), 3u);
    EXPECT_EQ(composition_of(str({0, 1, 0, 2}, 3)), Composition({2, 1, 1}));
    EXPECT_EQ(composition_of(str({1, 1, 1, 1}, 2)), Composition({0, 4}));
    // "aabca"
    EXPECT_EQ(composition_of(str({0, 0, 1, 2, 0}, 4)), Composition({3, 1, 1, 0}));
}

TEST(SymbolString, RejectsOutOfRangeSymbols) {
    EXPECT_THROW(SymbolString({0, 3}, 3), DomainError);
    EXPECT_THROW(SymbolString::from_digits("012a", 10), DomainError);
    EXPECT_EQ(SymbolString::from_digits("0110", 2).to_text(), "0110");
    EXPECT_EQ(SymbolString({0, 11}, 12).to_text(), "0,11");
}

TEST(SourceModelProperties, RandomStrings) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t a = 2 + rng() % 6;
        const std::size_t n = 1 + rng() % 40;
        std::vector<Symbol> sym(n);
        for (auto& x : sym) x = static_cast<Symbol>(rng() % a);
        const SymbolString s(sym, a);

        std::vector<double> p(a);
        for (auto& x : p) x = 0.05 + static_cast<double>(rng() % 1000) / 1000.0;
        const double total = std::accumulate(p.begin(), p.end(), 0.0);
        for (auto& x : p) x /= total;
        const double drift = 1.0 - std::accumulate(p.begin(), p.end(), 0.0);
        p[0] += drift;
        const SourceEnsemble e(p);

        const double lit = literal_information_content(e, s);
        const double via_prob = -std::log2(string_probability(e, s));
        EXPECT_NEAR(lit, via_prob, 1e-9 * std::max(1.0, lit));
        EXPECT_DOUBLE_EQ(literal_information_content(SourceEnsemble::uniform(a), s),
                         static_cast<double>(n) * std::log2(static_cast<double>(a)));

        const double emp = empirical_information_content(s);
        EXPECT_NEAR(emp, oracle::emp_info(sym, a), 1e-9);

        // Permutation and relabelling invariance.
        auto shuffled = sym;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::vector<Symbol> relabel(a);
        std::iota(relabel.begin(), relabel.end(), Symbol{0});
        std::shuffle(relabel.begin(), relabel.end(), rng);
        for (auto& x : shuffled) x = relabel[x];
        EXPECT_EQ(empirical_information_content(SymbolString(shuffled, a)), emp);

        const bool constant = std::all_of(sym.begin(), sym.end(), [&](Symbol x) { return x == sym[0]; });
        EXPECT_EQ(emp == 0.0, constant);
        EXPECT_GE(emp, 0.0);
        EXPECT_LE(emp, static_cast<double>(n) * std::log2(static_cast<double>(std::min(a, n))) + 1e-9);
    }
}
