#include "sst/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sst/errors.hpp"
#include "sst/numeric.hpp"
#include "sst/parallel.hpp"

namespace sst {

namespace {

constexpr std::uint64_t kStreamPlain = 0;
constexpr std::uint64_t kStreamShaped = 1;

// Distinct sampled compositions with multiplicities, in exact information order.
struct Histogram {
    std::size_t a = 0;
    std::vector<Count> flat;
    std::vector<std::uint64_t> multiplicity;

    std::size_t size() const { return multiplicity.size(); }
    std::span<const Count> counts(std::size_t i) const { return {flat.data() + i * a, a}; }
};

Histogram build_histogram(const SampleSet& set) {
    const std::size_t a = set.alphabet_size();
    const std::uint64_t samples = set.size();
    auto row_less = [&](std::uint64_t l, std::uint64_t r) {
        const auto lc = set.counts(l);
        const auto rc = set.counts(r);
        return std::lexicographical_compare(lc.begin(), lc.end(), rc.begin(), rc.end());
    };
    std::vector<std::uint64_t> rows(samples);
    std::iota(rows.begin(), rows.end(), std::uint64_t{0});
    std::sort(rows.begin(), rows.end(), row_less);

    // Run-length encode the lexicographically sorted samples.
    std::vector<std::vector<Count>> distinct;
    std::vector<std::uint64_t> mult;
    for (std::uint64_t i = 0; i < samples; ++i) {
        if (i > 0 && !row_less(rows[i - 1], rows[i])) {
            ++mult.back();
            continue;
        }
        const auto c = set.counts(rows[i]);
        distinct.emplace_back(c.begin(), c.end());
        mult.push_back(1);
    }

    // Exact order: tiers of the underlying multisets, then lexicographic.
    std::vector<std::vector<Count>> multisets;
    multisets.reserve(distinct.size());
    for (const auto& c : distinct) {
        auto m = c;
        std::sort(m.begin(), m.end(), std::greater<>());
        multisets.push_back(std::move(m));
    }
    std::vector<std::size_t> ms_order(multisets.size());
    std::iota(ms_order.begin(), ms_order.end(), std::size_t{0});
    std::sort(ms_order.begin(), ms_order.end(),
              [&](std::size_t l, std::size_t r) { return multisets[l] < multisets[r]; });
    std::vector<std::vector<Count>> unique_ms;
    std::vector<std::size_t> ms_id(multisets.size());
    for (std::size_t i = 0; i < ms_order.size(); ++i) {
        if (i == 0 || multisets[ms_order[i]] != multisets[ms_order[i - 1]]) unique_ms.push_back(multisets[ms_order[i]]);
        ms_id[ms_order[i]] = unique_ms.size() - 1;
    }
    const auto tiers = product_tiers(unique_ms);

    std::vector<std::size_t> order(distinct.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // `distinct` is already lexicographic, so a stable sort by tier completes the order.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return tiers[ms_id[l]] < tiers[ms_id[r]]; });

    Histogram h;
    h.a = a;
    h.flat.reserve(distinct.size() * a);
    h.multiplicity.reserve(distinct.size());
    for (std::size_t i : order) {
        h.flat.insert(h.flat.end(), distinct[i].begin(), distinct[i].end());
        h.multiplicity.push_back(mult[i]);
    }
    return h;
}

InfoBits sample_info(Interpretation interpretation, std::span<const Count> counts) {
    if (interpretation == Interpretation::empirical) return info_content_of_composition(counts);
    return literal_info_of_composition(SourceEnsemble::uniform(counts.size()), counts);
}

}  // namespace

void McConfig::validate() const {
    if (alphabet_size < 1) throw std::invalid_argument("alphabet size must be positive");
    if (samples < 1) throw std::invalid_argument("sample count must be positive");
    if (length < 1) throw std::invalid_argument("length must be positive");
    if (length + order > std::numeric_limits<Count>::max()) throw std::invalid_argument("length too large");
}

Composition sample_composition(RandomStream& stream, std::uint64_t n, std::size_t a) {
    std::vector<Count> counts(a, 0);
    for (std::uint64_t j = 0; j < n; ++j) ++counts[stream.below(a)];
    return Composition(std::move(counts));
}

SymbolString sample_string(RandomStream& stream, std::uint64_t n, std::size_t a) {
    std::vector<Symbol> symbols(n);
    for (auto& s : symbols) s = static_cast<Symbol>(stream.below(a));
    return SymbolString(std::move(symbols), a);
}

SampleSet::SampleSet(std::size_t alphabet_size, std::vector<Count> flat) : a_(alphabet_size), flat_(std::move(flat)) {
    if (a_ == 0) throw std::invalid_argument("alphabet size must be positive");
    if (flat_.size() % a_ != 0) throw std::invalid_argument("flat sample storage is not a whole number of rows");
}

void SampleSet::add(std::span<const Count> counts) {
    if (counts.size() != a_) throw std::invalid_argument("sample has the wrong alphabet size");
    flat_.insert(flat_.end(), counts.begin(), counts.end());
}

SampleSet draw_samples(const McConfig& config, std::uint64_t length, std::uint64_t stream) {
    config.validate();
    const std::size_t a = config.alphabet_size;
    std::vector<Count> flat(config.samples * a, 0);
    const std::uint64_t shards = (config.samples + kShardSize - 1) / kShardSize;
    for_each_shard(shards, config.threads, [&](std::uint64_t shard) {
        RandomStream rng(derive_seed(config.seed, stream, shard));
        const std::uint64_t first = shard * kShardSize;
        const std::uint64_t last = std::min(config.samples, first + kShardSize);
        for (std::uint64_t s = first; s < last; ++s) {
            Count* row = flat.data() + s * a;
            for (std::uint64_t j = 0; j < length; ++j) ++row[rng.below(a)];
        }
    });
    return SampleSet(a, std::move(flat));
}

McEstimate mean_info(const SampleSet& samples, Interpretation interpretation) {
    if (samples.size() == 0) throw std::invalid_argument("empty sample set");
    const Histogram h = build_histogram(samples);
    std::vector<InfoBits> info(h.size());
    CompensatedSum sum;
    for (std::size_t i = 0; i < h.size(); ++i) {
        info[i] = sample_info(interpretation, h.counts(i));
        sum.add(static_cast<double>(h.multiplicity[i]) * info[i]);
    }
    const double m = static_cast<double>(samples.size());
    McEstimate est;
    est.samples_used = samples.size();
    est.mean = sum.value() / m;
    if (samples.size() > 1) {
        CompensatedSum sq;
        for (std::size_t i = 0; i < h.size(); ++i) {
            const double d = info[i] - est.mean;
            sq.add(static_cast<double>(h.multiplicity[i]) * d * d);
        }
        est.std_error = std::sqrt(std::max(0.0, sq.value()) / (m - 1.0) / m);
    }
    return est;
}

McEstimate lower_tail_mean_info(const SampleSet& samples, std::uint64_t keep, Interpretation interpretation) {
    if (keep == 0 || keep > samples.size()) throw std::invalid_argument("keep must lie in [1, sample count]");
    const Histogram h = build_histogram(samples);

    std::vector<std::pair<InfoBits, std::uint64_t>> taken;
    std::uint64_t remaining = keep;
    for (std::size_t i = 0; i < h.size() && remaining > 0; ++i) {
        const std::uint64_t take = std::min(remaining, h.multiplicity[i]);
        taken.emplace_back(sample_info(interpretation, h.counts(i)), take);
        remaining -= take;
    }

    const double m = static_cast<double>(keep);
    CompensatedSum sum;
    for (const auto& [info, count] : taken) sum.add(static_cast<double>(count) * info);
    McEstimate est;
    est.samples_used = keep;
    est.mean = sum.value() / m;
    if (keep > 1) {
        CompensatedSum sq;
        for (const auto& [info, count] : taken) {
            const double d = info - est.mean;
            sq.add(static_cast<double>(count) * d * d);
        }
        const double var = std::max(0.0, sq.value()) / (m - 1.0);
        const double p = m / static_cast<double>(samples.size());
        const double cut = taken.back().first - est.mean;
        est.std_error = std::sqrt((var + (1.0 - p) * cut * cut) / m);
    }
    return est;
}

McEstimate estimate_average_info(const McConfig& config) {
    return mean_info(draw_samples(config, config.length, kStreamPlain), config.interpretation);
}

McEstimate estimate_shaped_average_info(const McConfig& config) {
    config.validate();
    const BigInt keep = from_u64(config.samples) / ipow(config.alphabet_size, config.order);
    if (keep == 0)
        throw DomainError("floor(M / a^k) is zero: " + std::to_string(config.samples) +
                          " samples select no shaped strings");
    const SampleSet samples = draw_samples(config, config.length + config.order, kStreamShaped);
    return lower_tail_mean_info(samples, to_u64(keep), config.interpretation);
}

std::vector<AverageReport> table2(std::span<const TableRowConfig> configs) {
    std::vector<AverageReport> reports;
    reports.reserve(configs.size());
    for (const auto& row : configs) {
        const McConfig& mc = row.mc;
        bool exact = row.method == TableMethod::exact;
        if (row.method == TableMethod::automatic)
            exact = mc.alphabet_size >= 2 && composition_count(mc.length + mc.order, mc.alphabet_size) <= from_u64(row.cap);
        if (exact) {
            reports.push_back(exact_report(mc.alphabet_size, mc.length, mc.order, mc.interpretation, row.cap));
            continue;
        }
        AverageReport r;
        r.alphabet_size = mc.alphabet_size;
        r.n = mc.length;
        r.k = mc.order;
        r.method = Method::monte_carlo;
        const McEstimate x = estimate_average_info(mc);
        const McEstimate y = estimate_shaped_average_info(mc);
        r.i_x_bits = x.mean;
        r.i_y_bits = y.mean;
        r.diff_bits = x.mean - y.mean;
        r.i_x_std_error = x.std_error;
        r.i_y_std_error = y.std_error;
        reports.push_back(r);
    }
    return reports;
}

std::vector<TableRowConfig> table2_configs(TableMethod method, std::uint64_t samples, std::uint64_t seed,
                                           unsigned threads) {
    std::vector<TableRowConfig> configs;
    for (std::size_t a = 2; a <= 10; ++a) {
        TableRowConfig row;
        row.mc.alphabet_size = a;
        row.mc.length = 100;
        row.mc.order = 1;
        row.mc.samples = samples;
        row.mc.seed = seed;
        row.mc.threads = threads;
        row.method = method;
        configs.push_back(row);
    }
    return configs;
}

}  // namespace sst
