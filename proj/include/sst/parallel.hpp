#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sst {

/// Runs fn(shard) for every shard in [0, shards) on up to `threads` workers.
/// Shards are claimed dynamically; callers make results independent of the
/// claiming order by writing into per-shard slots. The first exception thrown
/// by any shard is rethrown after all workers stop.
template <class Fn>
void for_each_shard(std::uint64_t shards, unsigned threads, Fn&& fn) {
    const auto workers = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, std::max<std::uint64_t>(shards, 1)));
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::uint64_t s = next++; s < shards; s = next++) {
            try {
                fn(s);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = shards;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace sst
