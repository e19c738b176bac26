#include "sst/exact_analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sst/errors.hpp"
#include "sst/numeric.hpp"

namespace sst {

namespace {

void check_shaping_args(std::size_t a, std::uint64_t n, std::uint64_t k) {
    if (a < 2) throw std::invalid_argument("shaping needs an alphabet of at least 2 symbols");
    if (n < 1 || k < 1) throw std::invalid_argument("shaping needs n >= 1 and k >= 1");
}

void check_cap(std::uint64_t n, std::size_t a, std::uint64_t cap) {
    const BigInt classes = composition_count(n, a);
    if (classes > from_u64(cap))
        throw ResourceError(to_string(classes) + " compositions of length " + std::to_string(n) +
                            " exceed the cap of " + std::to_string(cap));
}

InfoBits class_info(const SourceEnsemble& ensemble, std::span<const Count> counts,
                    Interpretation interpretation) {
    return interpretation == Interpretation::empirical ? info_content_of_composition(counts)
                                                       : literal_info_of_composition(ensemble, counts);
}

// log2 of the probability of one string with composition `counts`.
double log2_string_probability(const SourceEnsemble& ensemble, std::span<const Count> counts) {
    double bits = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] == 0) continue;
        const double p = ensemble.probabilities()[i];
        if (p <= 0.0) return -INFINITY;
        bits += static_cast<double>(counts[i]) * std::log2(p);
    }
    return bits;
}

double log2_big(const BigInt& v) {
    signed long e = 0;
    const double m = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::log2(m) + static_cast<double>(e);
}

}  // namespace

std::vector<std::pair<Composition, BigInt>> SelectionBoundary::included_classes() const {
    std::vector<std::pair<Composition, BigInt>> out;
    out.reserve(fully_included);
    for (std::size_t i = 0; i < fully_included; ++i) out.emplace_back(order->composition(i), order->class_count(i));
    return out;
}

InfoBits average_info_exact(const SourceEnsemble& ensemble, std::uint64_t n, Interpretation interpretation,
                            std::uint64_t cap) {
    const std::size_t a = ensemble.alphabet_size();
    check_cap(n, a, cap);
    if (n == 0) return 0.0;
    CompensatedSum sum;
    for (const auto& counts : CompositionRange(n, a)) {
        const double w = class_weight(ensemble, counts);
        if (w == 0.0) continue;
        sum.add(w * class_info(ensemble, counts, interpretation));
    }
    return sum.value();
}

SelectionBoundary shaped_threshold(std::size_t a, std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    check_shaping_args(a, n, k);
    SelectionBoundary b;
    b.order = std::make_shared<const SortedCompositions>(sorted_compositions(n + k, a, cap));
    b.target = ipow(a, n);
    BigInt selected = 0;
    for (std::size_t i = 0; i < b.order->size(); ++i) {
        const BigInt size = b.order->class_count(i);
        const BigInt after = selected + size;
        if (after <= b.target) {
            selected = after;
            b.fully_included = i + 1;
            if (after == b.target) break;
            continue;
        }
        b.boundary_class = i;
        b.strings_from_boundary = b.target - selected;
        break;
    }
    return b;
}

InfoBits shaped_average_info_exact(std::size_t a, std::uint64_t n, std::uint64_t k, Interpretation interpretation,
                                   std::uint64_t cap) {
    const SelectionBoundary b = shaped_threshold(a, n, k, cap);
    const SourceEnsemble uniform = SourceEnsemble::uniform(a);
    const SortedCompositions& order = *b.order;
    CompensatedSum sum;
    for (std::size_t i = 0; i < b.fully_included; ++i)
        sum.add(ratio(order.class_count(i), b.target) * class_info(uniform, order.counts(i), interpretation));
    if (b.boundary_class)
        sum.add(ratio(b.strings_from_boundary, b.target) *
                class_info(uniform, order.counts(*b.boundary_class), interpretation));
    return sum.value();
}

InfoBits shaped_average_info_weighted(const SourceEnsemble& ensemble, std::uint64_t n, std::uint64_t k,
                                      Interpretation interpretation, std::uint64_t cap) {
    const std::size_t a = ensemble.alphabet_size();
    check_shaping_args(a, n, k);
    check_cap(n + k, a, cap);
    const SortedCompositions xs = sorted_compositions(n, a, cap);
    const SortedCompositions ys = sorted_compositions(n + k, a, cap);

    // Both sequences cover ranks [0, a^n); walk their class boundaries together.
    CompensatedSum sum;
    std::size_t xi = 0;
    std::size_t yi = 0;
    BigInt x_left = xs.class_count(0);
    BigInt y_left = ys.class_count(0);
    double x_log2p = log2_string_probability(ensemble, xs.counts(0));
    InfoBits y_info = class_info(ensemble, ys.counts(0), interpretation);
    while (true) {
        const BigInt& overlap = x_left < y_left ? x_left : y_left;
        if (std::isfinite(x_log2p)) sum.add(std::exp2(log2_big(overlap) + x_log2p) * y_info);
        const BigInt step = overlap;
        x_left -= step;
        y_left -= step;
        if (x_left == 0) {
            if (++xi == xs.size()) break;
            x_left = xs.class_count(xi);
            x_log2p = log2_string_probability(ensemble, xs.counts(xi));
        }
        if (y_left == 0) {
            ++yi;
            y_left = ys.class_count(yi);
            y_info = class_info(ensemble, ys.counts(yi), interpretation);
        }
    }
    return sum.value();
}

InfoBits complement_min_info(std::size_t a, std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    const SelectionBoundary b = shaped_threshold(a, n, k, cap);
    const std::size_t next = b.first_unselected();
    if (next >= b.order->size()) throw std::logic_error("selection covers every string of length n+k");
    return b.order->info(next);
}

std::vector<SeriesRow> figure1_series(std::size_t a, std::uint64_t n, std::uint64_t k, std::uint64_t max_rows) {
    check_shaping_args(a, n, k);
    const BigInt rows = ipow(a, n);
    if (rows > from_u64(max_rows))
        throw ResourceError(std::to_string(a) + "^" + std::to_string(n) + " rows exceed the limit of " +
                            std::to_string(max_rows));
    const std::uint64_t total = to_u64(rows);
    std::vector<SeriesRow> series(total);
    for (std::uint64_t r = 0; r < total; ++r) series[r].rank = r;

    const SortedCompositions xs = sorted_compositions(n, a);
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::uint64_t size = to_u64(xs.class_count(i));
        for (std::uint64_t j = 0; j < size; ++j) series[r++].i_x = xs.info(i);
    }
    const SortedCompositions ys = sorted_compositions(n + k, a);
    r = 0;
    for (std::size_t i = 0; i < ys.size() && r < total; ++i) {
        const BigInt size = ys.class_count(i);
        const std::uint64_t take = size >= from_u64(total - r) ? total - r : to_u64(size);
        for (std::uint64_t j = 0; j < take; ++j) series[r++].i_y = ys.info(i);
    }
    return series;
}

AverageReport exact_report(std::size_t a, std::uint64_t n, std::uint64_t k, Interpretation interpretation,
                           std::uint64_t cap) {
    check_shaping_args(a, n, k);
    check_cap(n + k, a, cap);
    AverageReport report;
    report.alphabet_size = a;
    report.n = n;
    report.k = k;
    report.method = Method::exact;
    report.i_x_bits = average_info_exact(SourceEnsemble::uniform(a), n, interpretation, cap);
    report.i_y_bits = shaped_average_info_exact(a, n, k, interpretation, cap);
    report.diff_bits = report.i_x_bits - report.i_y_bits;
    return report;
}

}  // namespace sst
