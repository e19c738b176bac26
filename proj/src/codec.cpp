#include "sst/codec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sst/errors.hpp"
#include "sst/monte_carlo.hpp"
#include "sst/numeric.hpp"
#include "sst/parallel.hpp"

namespace sst {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr int kCodeBits = 62;
constexpr std::uint64_t kTop = (std::uint64_t{1} << kCodeBits) - 1;
constexpr std::uint64_t kHalf = std::uint64_t{1} << (kCodeBits - 1);
constexpr std::uint64_t kFirstQuarter = kHalf >> 1;
constexpr std::uint64_t kThirdQuarter = kHalf + kFirstQuarter;

constexpr std::uint64_t kStreamExperiment = 2;

// KT estimator scaled by two: symbol b has frequency 2 c_b + 1 out of 2 t + a.
class KtModel {
public:
    explicit KtModel(std::size_t a) : counts_(a, 0), total_(a) {}

    std::uint64_t total() const noexcept { return total_; }
    std::uint64_t freq(std::size_t b) const noexcept { return 2 * counts_[b] + 1; }
    std::uint64_t cumulative(std::size_t b) const noexcept {
        std::uint64_t c = 0;
        for (std::size_t i = 0; i < b; ++i) c += freq(i);
        return c;
    }
    void update(std::size_t b) noexcept {
        ++counts_[b];
        total_ += 2;
    }
    std::size_t size() const noexcept { return counts_.size(); }

private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_;
};

void narrow(std::uint64_t& low, std::uint64_t& high, std::uint64_t cum_lo, std::uint64_t cum_hi,
            std::uint64_t total) {
    const u128 range = static_cast<u128>(high - low) + 1;
    high = low + static_cast<std::uint64_t>(range * cum_hi / total) - 1;
    low = low + static_cast<std::uint64_t>(range * cum_lo / total);
}

class Encoder {
public:
    explicit Encoder(Bitstream& out) : out_(out) {}

    void encode(std::uint64_t cum_lo, std::uint64_t cum_hi, std::uint64_t total) {
        narrow(low_, high_, cum_lo, cum_hi, total);
        while (true) {
            if (high_ < kHalf) {
                emit(false);
            } else if (low_ >= kHalf) {
                emit(true);
                low_ -= kHalf;
                high_ -= kHalf;
            } else if (low_ >= kFirstQuarter && high_ < kThirdQuarter) {
                ++pending_;
                low_ -= kFirstQuarter;
                high_ -= kFirstQuarter;
            } else {
                break;
            }
            low_ <<= 1;
            high_ = (high_ << 1) | 1;
        }
    }

    // Two bits select a quarter interval inside [low, high], so any
    // continuation of the stream decodes to the same symbols.
    void finish() {
        ++pending_;
        emit(low_ >= kFirstQuarter);
    }

private:
    void emit(bool bit) {
        out_.push(bit);
        for (; pending_ > 0; --pending_) out_.push(!bit);
    }

    Bitstream& out_;
    std::uint64_t low_ = 0;
    std::uint64_t high_ = kTop;
    std::uint64_t pending_ = 0;
};

}  // namespace

void Bitstream::push(bool bit) {
    if ((bit_length_ & 7) == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80U >> (bit_length_ & 7));
    ++bit_length_;
}

Bitstream Bitstream::from_bytes(std::vector<std::uint8_t> bytes, std::uint64_t bit_length) {
    if (bytes.size() != (bit_length + 7) / 8)
        throw CorruptStreamError("payload holds " + std::to_string(bytes.size()) + " bytes for " +
                                 std::to_string(bit_length) + " bits");
    if (bit_length & 7) {
        const auto used = static_cast<unsigned>(bit_length & 7);
        if (bytes.back() & (0xFFU >> used)) throw CorruptStreamError("nonzero padding bits");
    }
    Bitstream b;
    b.bytes_ = std::move(bytes);
    b.bit_length_ = bit_length;
    return b;
}

Bitstream encode(const SymbolString& s) {
    Bitstream out;
    if (s.empty()) return out;
    KtModel model(s.alphabet_size());
    Encoder enc(out);
    for (Symbol x : s.symbols()) {
        const std::uint64_t lo = model.cumulative(x);
        enc.encode(lo, lo + model.freq(x), model.total());
        model.update(x);
    }
    enc.finish();
    return out;
}

std::pair<SymbolString, std::uint64_t> decode_prefix(const Bitstream& bits, std::uint64_t offset,
                                                    std::uint64_t n, std::size_t a) {
    if (a == 0) throw std::invalid_argument("alphabet size must be positive");
    if (n == 0) return {SymbolString({}, a), 0};

    std::uint64_t pos = offset;
    // Past the end the stream reads as zeros; a short stream is caught by the
    // consumed-length check.
    auto next_bit = [&]() -> std::uint64_t { return pos < bits.bit_length() ? bits.bit(pos++) : (++pos, 0); };

    std::uint64_t value = 0;
    for (int i = 0; i < kCodeBits; ++i) value = (value << 1) | next_bit();
    std::uint64_t low = 0;
    std::uint64_t high = kTop;
    std::uint64_t steps = 0;

    KtModel model(a);
    std::vector<Symbol> out;
    out.reserve(n);
    for (std::uint64_t j = 0; j < n; ++j) {
        if (value < low || value > high) throw CorruptStreamError("code value left the coding interval");
        const u128 range = static_cast<u128>(high - low) + 1;
        const std::uint64_t total = model.total();
        const auto target = static_cast<std::uint64_t>(((static_cast<u128>(value - low) + 1) * total - 1) / range);
        if (target >= total) throw CorruptStreamError("code value outside the model range");
        std::size_t b = 0;
        std::uint64_t cum = 0;
        while (cum + model.freq(b) <= target) cum += model.freq(b++);
        narrow(low, high, cum, cum + model.freq(b), total);
        model.update(b);
        out.push_back(static_cast<Symbol>(b));
        while (true) {
            if (high < kHalf) {
            } else if (low >= kHalf) {
                value -= kHalf;
                low -= kHalf;
                high -= kHalf;
            } else if (low >= kFirstQuarter && high < kThirdQuarter) {
                value -= kFirstQuarter;
                low -= kFirstQuarter;
                high -= kFirstQuarter;
            } else {
                break;
            }
            low <<= 1;
            high = (high << 1) | 1;
            value = (value << 1) | next_bit();
            ++steps;
        }
    }
    return {SymbolString(std::move(out), a), steps + 2};
}

SymbolString decode(const Bitstream& bits, std::uint64_t n, std::size_t a) {
    auto [s, used] = decode_prefix(bits, 0, n, a);
    if (used != bits.bit_length())
        throw CorruptStreamError("stream has " + std::to_string(bits.bit_length()) + " bits, encoding uses " +
                                 std::to_string(used));
    return s;
}

double kt_code_length(const SymbolString& s) {
    KtModel model(s.alphabet_size());
    double bits = 0.0;
    for (Symbol x : s.symbols()) {
        bits -= std::log2(static_cast<double>(model.freq(x)) / static_cast<double>(model.total()));
        model.update(x);
    }
    return bits;
}

std::vector<std::uint8_t> write_container(const Bitstream& payload, std::uint64_t n, std::size_t a) {
    if (a == 0 || a > 0xFFFF) throw std::invalid_argument("container alphabet size must be in [1, 65535]");
    std::vector<std::uint8_t> out;
    out.reserve(kContainerHeaderSize + payload.bytes().size());
    auto put = [&](std::uint64_t v, int bytes) {
        for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    };
    put(kContainerVersion, 1);
    put(a, 2);
    put(n, 8);
    put(payload.bit_length(), 8);
    out.insert(out.end(), payload.bytes().begin(), payload.bytes().end());
    return out;
}

Container read_container(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kContainerHeaderSize) throw CorruptStreamError("container shorter than its header");
    auto get = [&](std::size_t at, int width) {
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(bytes[at + i]) << (8 * i);
        return v;
    };
    if (bytes[0] != kContainerVersion)
        throw CorruptStreamError("unsupported container version " + std::to_string(bytes[0]));
    Container c;
    c.alphabet_size = get(1, 2);
    c.length = get(3, 8);
    const std::uint64_t bit_length = get(11, 8);
    if (c.alphabet_size == 0) throw CorruptStreamError("container alphabet size is zero");
    c.payload = Bitstream::from_bytes({bytes.begin() + kContainerHeaderSize, bytes.end()}, bit_length);
    return c;
}

ExperimentReport shaping_experiment(const ShapingParameters& params, std::uint64_t samples, std::uint64_t seed,
                                    unsigned threads) {
    params.validate();
    if (samples < 1) throw std::invalid_argument("sample count must be positive");
    // Build the shared tables before the workers start.
    class_table(params.length, params.alphabet_size);
    class_table(params.shaped_length(), params.alphabet_size);

    struct Sample {
        double bits_raw, bits_shaped, info_raw, info_shaped;
    };
    std::vector<Sample> per_sample(samples);
    const std::uint64_t shards = (samples + kShardSize - 1) / kShardSize;
    for_each_shard(shards, threads, [&](std::uint64_t shard) {
        RandomStream rng(derive_seed(seed, kStreamExperiment, shard));
        const std::uint64_t last = std::min(samples, (shard + 1) * kShardSize);
        for (std::uint64_t i = shard * kShardSize; i < last; ++i) {
            const SymbolString x = sample_string(rng, params.length, params.alphabet_size);
            const SymbolString y = shape(x, params);
            per_sample[i] = {static_cast<double>(encode(x).bit_length()), static_cast<double>(encode(y).bit_length()),
                             empirical_information_content(x), empirical_information_content(y)};
        }
    });

    CompensatedSum bits_raw, bits_shaped, info_raw, info_shaped;
    for (const Sample& s : per_sample) {
        bits_raw.add(s.bits_raw);
        bits_shaped.add(s.bits_shaped);
        info_raw.add(s.info_raw);
        info_shaped.add(s.info_shaped);
    }
    const double m = static_cast<double>(samples);
    ExperimentReport r;
    r.params = params;
    r.samples = samples;
    r.seed = seed;
    r.mean_bits_raw = bits_raw.value() / m;
    r.mean_bits_shaped = bits_shaped.value() / m;
    r.mean_emp_info_raw = info_raw.value() / m;
    r.mean_emp_info_shaped = info_shaped.value() / m;
    r.delta_bits = r.mean_bits_raw - r.mean_bits_shaped;
    r.bits_per_symbol_raw = r.mean_bits_raw / static_cast<double>(params.length);
    r.bits_per_symbol_shaped = r.mean_bits_shaped / static_cast<double>(params.length);
    if (samples > 1) {
        CompensatedSum sq_raw, sq_shaped;
        for (const Sample& s : per_sample) {
            sq_raw.add((s.info_raw - r.mean_emp_info_raw) * (s.info_raw - r.mean_emp_info_raw));
            sq_shaped.add((s.info_shaped - r.mean_emp_info_shaped) * (s.info_shaped - r.mean_emp_info_shaped));
        }
        r.std_error_emp_info_raw = std::sqrt(sq_raw.value() / (m - 1.0) / m);
        r.std_error_emp_info_shaped = std::sqrt(sq_shaped.value() / (m - 1.0) / m);
    }
    return r;
}

}  // namespace sst
