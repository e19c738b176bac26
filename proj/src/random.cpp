#include "sst/random.hpp"

namespace sst {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t shard) noexcept {
    std::uint64_t state = seed;
    std::uint64_t h = splitmix64(state);
    state = h ^ (stream * 0xd1b54a32d192ed03ULL);
    h = splitmix64(state);
    state = h ^ (shard * 0x8cb92ba72f3d8dd7ULL);
    return splitmix64(state);
}

namespace {
__extension__ using u128 = unsigned __int128;
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
    u128 m = static_cast<u128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<u128>(engine_()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace sst
