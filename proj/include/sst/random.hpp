#pragma once

#include <cstdint>
#include <random>

namespace sst {

/// Generator contract, version 1 ("sst-mt64-v1").
///
/// Every shard of a seeded computation owns a std::mt19937_64 whose seed is
/// derive_seed(seed, stream, shard). Bounded integers use Lemire's
/// multiply-and-reject method, so the sequence of drawn symbols is fully
/// determined by the standard-specified engine output and does not depend on
/// any standard-library distribution.
inline constexpr const char* kGeneratorName = "sst-mt64-v1";

/// One step of SplitMix64.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Seed for sub-stream (stream, shard) of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t shard) noexcept;

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

}  // namespace sst
