#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sst/composition.hpp"
#include "sst/exact_analyzer.hpp"
#include "sst/random.hpp"
#include "sst/source_model.hpp"

namespace sst {

/// Samples are drawn in shards of this size; shard s of a run uses the
/// generator seeded with derive_seed(seed, stream, s), whatever the thread count.
inline constexpr std::uint64_t kShardSize = 1 << 14;

struct McConfig {
    std::size_t alphabet_size = 2;
    std::uint64_t length = 100;
    std::uint64_t order = 1;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    Interpretation interpretation = Interpretation::empirical;

    void validate() const;
};

struct McEstimate {
    InfoBits mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples_used = 0;
};

/// Composition of a uniform random string of length n, tallied without
/// storing the string. Consumes exactly the draws sample_string would.
Composition sample_composition(RandomStream& stream, std::uint64_t n, std::size_t a);
SymbolString sample_string(RandomStream& stream, std::uint64_t n, std::size_t a);

/// Compositions of sampled strings, stored flat.
class SampleSet {
public:
    explicit SampleSet(std::size_t alphabet_size, std::vector<Count> flat = {});

    void add(std::span<const Count> counts);
    std::size_t alphabet_size() const noexcept { return a_; }
    std::uint64_t size() const noexcept { return a_ == 0 ? 0 : flat_.size() / a_; }
    std::span<const Count> counts(std::uint64_t i) const { return {flat_.data() + i * a_, a_}; }

private:
    std::size_t a_;
    std::vector<Count> flat_;
};

/// `samples` compositions of uniform strings of the given length, drawn from
/// sub-stream `stream` of config.seed in shards of kShardSize.
SampleSet draw_samples(const McConfig& config, std::uint64_t length, std::uint64_t stream);

/// Mean information over the set. The result depends only on the multiset of
/// samples, never on their order.
McEstimate mean_info(const SampleSet& samples, Interpretation interpretation = Interpretation::empirical);

/// Mean information of the `keep` lowest samples in the exact shaping order.
/// Order-independent like mean_info.
McEstimate lower_tail_mean_info(const SampleSet& samples, std::uint64_t keep,
                                Interpretation interpretation = Interpretation::empirical);

/// Sample mean of the information content over `samples` uniform strings of
/// length n, with std_error = sample deviation / sqrt(M).
McEstimate estimate_average_info(const McConfig& config);

/// Mean information of the lowest floor(M / a^k) of M uniform strings of
/// length n+k, ordered exactly as the shaping transform orders them.
///
/// std_error is the asymptotic error of a lower-tail mean estimate,
/// sqrt((s^2 + (1-p)(q - mean)^2) / m), where s^2 is the variance within the
/// selected samples, q the information at the cutoff and p = m / M.
/// Throws DomainError if floor(M / a^k) is zero.
McEstimate estimate_shaped_average_info(const McConfig& config);

enum class TableMethod { exact, monte_carlo, automatic };

struct TableRowConfig {
    McConfig mc;
    TableMethod method = TableMethod::automatic;
    /// `automatic` uses the exact method when the n+k compositions fit under this cap.
    std::uint64_t cap = kDefaultCompositionCap;
};

/// One report per config. Exact rows ignore the sample count and seed.
std::vector<AverageReport> table2(std::span<const TableRowConfig> configs);

/// Rows |A| = 2..10 at n = 100, k = 1.
std::vector<TableRowConfig> table2_configs(TableMethod method, std::uint64_t samples, std::uint64_t seed,
                                           unsigned threads);

}  // namespace sst
