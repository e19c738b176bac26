#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "sst/composition.hpp"
#include "sst/ensemble.hpp"

namespace sst {

/// The |A|^n least-information strings of length n+k, described by classes.
///
/// The first `fully_included` classes of `order` are selected whole; when the
/// cutoff lands inside a class, `boundary_class` names it and
/// `strings_from_boundary` of its strings (the lexicographically first ones)
/// are selected too.
struct SelectionBoundary {
    std::shared_ptr<const SortedCompositions> order;
    std::size_t fully_included = 0;
    std::optional<std::size_t> boundary_class;
    BigInt strings_from_boundary;
    BigInt target;

    std::vector<std::pair<Composition, BigInt>> included_classes() const;
    /// Index of the first class not fully selected (the boundary class, if any).
    std::size_t first_unselected() const noexcept { return fully_included; }
};

enum class Method { exact, monte_carlo };

/// One row of an I(x) / I(y) comparison table.
struct AverageReport {
    std::size_t alphabet_size = 0;
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    InfoBits i_x_bits = 0.0;
    InfoBits i_y_bits = 0.0;
    InfoBits diff_bits = 0.0;
    Method method = Method::exact;
    std::optional<double> i_x_std_error;
    std::optional<double> i_y_std_error;
};

/// Mean information content of a length-n string drawn from `ensemble`,
/// summed over composition classes. Throws ResourceError past `cap` classes.
InfoBits average_info_exact(const SourceEnsemble& ensemble, std::uint64_t n,
                            Interpretation interpretation = Interpretation::empirical,
                            std::uint64_t cap = kDefaultCompositionCap);

SelectionBoundary shaped_threshold(std::size_t a, std::uint64_t n, std::uint64_t k,
                                   std::uint64_t cap = kDefaultCompositionCap);

/// Mean information content of the shaped strings under a uniform source:
/// the plain mean over the selected set.
InfoBits shaped_average_info_exact(std::size_t a, std::uint64_t n, std::uint64_t k,
                                   Interpretation interpretation = Interpretation::empirical,
                                   std::uint64_t cap = kDefaultCompositionCap);

/// As shaped_average_info_exact, but each shaped string is weighted by the
/// source probability of its preimage. Rank ranges of preimage classes and
/// image classes are intersected, so no string is materialized.
InfoBits shaped_average_info_weighted(const SourceEnsemble& ensemble, std::uint64_t n, std::uint64_t k,
                                      Interpretation interpretation = Interpretation::empirical,
                                      std::uint64_t cap = kDefaultCompositionCap);

/// Minimum information content over the strings of length n+k left out of
/// the selection.
InfoBits complement_min_info(std::size_t a, std::uint64_t n, std::uint64_t k,
                             std::uint64_t cap = kDefaultCompositionCap);

struct SeriesRow {
    std::uint64_t rank = 0;
    InfoBits i_x = 0.0;
    InfoBits i_y = 0.0;
};

inline constexpr std::uint64_t kMaxSeriesRows = 10'000'000;

/// Per-rank information of x_i and of its image y_i = f(x_i), for every rank.
/// Throws ResourceError when a^n exceeds `max_rows`.
std::vector<SeriesRow> figure1_series(std::size_t a, std::uint64_t n, std::uint64_t k,
                                      std::uint64_t max_rows = kMaxSeriesRows);

/// I(x), I(y) and their difference under a uniform source, computed exactly.
AverageReport exact_report(std::size_t a, std::uint64_t n, std::uint64_t k,
                           Interpretation interpretation = Interpretation::empirical,
                           std::uint64_t cap = kDefaultCompositionCap);

}  // namespace sst
