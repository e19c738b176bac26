#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sst {

using Symbol = std::uint32_t;

/// Information content is always measured in bits.
using InfoBits = double;

/// Which probability enters the per-string information content.
///
/// `empirical` measures a string against its own symbol frequencies and is
/// what reproduces the published tables; `literal` uses the source
/// probabilities, which under a uniform source is the constant n*log2|A|.
enum class Interpretation { empirical, literal };

/// A memoryless source: alphabet {0, ..., |A|-1} with one probability per symbol.
class SourceEnsemble {
public:
    /// Throws std::invalid_argument unless the probabilities are in [0,1]
    /// and sum to 1 within 1e-12.
    explicit SourceEnsemble(std::vector<double> probabilities);

    static SourceEnsemble uniform(std::size_t alphabet_size);

    std::size_t alphabet_size() const noexcept { return probabilities_.size(); }
    std::span<const double> probabilities() const noexcept { return probabilities_; }
    double probability(Symbol s) const { return probabilities_.at(s); }
    bool is_uniform() const noexcept { return uniform_; }

private:
    std::vector<double> probabilities_;
    bool uniform_ = false;
};

/// -sum p log2 p, with 0 log 0 = 0.
InfoBits entropy(const SourceEnsemble& ensemble);

}  // namespace sst
