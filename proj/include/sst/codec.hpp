#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sst/shaping_map.hpp"
#include "sst/source_model.hpp"

namespace sst {

/// A bit sequence, most significant bit of each byte first. Bits past
/// bit_length in the last byte are zero.
class Bitstream {
public:
    void push(bool bit);
    bool bit(std::uint64_t i) const { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1U; }
    std::uint64_t bit_length() const noexcept { return bit_length_; }
    std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

    /// Throws CorruptStreamError if bytes cannot hold bit_length bits or the
    /// padding bits are not zero.
    static Bitstream from_bytes(std::vector<std::uint8_t> bytes, std::uint64_t bit_length);

    friend bool operator==(const Bitstream&, const Bitstream&) = default;

private:
    std::vector<std::uint8_t> bytes_;
    std::uint64_t bit_length_ = 0;
};

/// Adaptive order-0 arithmetic code of s with the Krichevsky-Trofimov
/// (add one half) estimator over s.alphabet_size() symbols.
///
/// The code is self-delimiting given (n, a): decode_prefix stops at exactly
/// the bit where the encoder stopped, whatever follows.
Bitstream encode(const SymbolString& s);

/// Throws CorruptStreamError unless `bits` is exactly one encoding of a
/// length-n string over a symbols.
SymbolString decode(const Bitstream& bits, std::uint64_t n, std::size_t a);

/// Decodes one string starting at bit `offset`; returns it with the number
/// of bits it occupied.
std::pair<SymbolString, std::uint64_t> decode_prefix(const Bitstream& bits, std::uint64_t offset,
                                                    std::uint64_t n, std::size_t a);

/// -log2 of the KT sequential probability of s; encode() emits at most two
/// bits more than this.
double kt_code_length(const SymbolString& s);

inline constexpr std::uint8_t kContainerVersion = 1;
inline constexpr std::size_t kContainerHeaderSize = 19;

/// Container: version (1 byte), a (2 bytes), n (8 bytes), payload bit length
/// (8 bytes), all little-endian, followed by the zero-padded payload bytes.
std::vector<std::uint8_t> write_container(const Bitstream& payload, std::uint64_t n, std::size_t a);

struct Container {
    std::size_t alphabet_size = 0;
    std::uint64_t length = 0;
    Bitstream payload;
};

/// Throws CorruptStreamError when the header or payload size is inconsistent.
Container read_container(std::span<const std::uint8_t> bytes);

struct ExperimentReport {
    ShapingParameters params;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double mean_bits_raw = 0.0;
    double mean_bits_shaped = 0.0;
    InfoBits mean_emp_info_raw = 0.0;
    InfoBits mean_emp_info_shaped = 0.0;
    double delta_bits = 0.0;
    /// Totals divided by n for both columns: shaped strings are k symbols
    /// longer but carry the same n source symbols.
    double bits_per_symbol_raw = 0.0;
    double bits_per_symbol_shaped = 0.0;
    double std_error_emp_info_raw = 0.0;
    double std_error_emp_info_shaped = 0.0;
};

/// Encodes `samples` seeded uniform strings x and their images shape(x),
/// reporting mean compressed sizes and mean empirical information.
ExperimentReport shaping_experiment(const ShapingParameters& params, std::uint64_t samples, std::uint64_t seed,
                                    unsigned threads = 1);

}  // namespace sst
