#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace spdelab {

struct ParallelOptions {
    unsigned workers = 1;
    long block_size = 64;
};

/// Deterministic map-reduce over path indices.  Paths are partitioned into
/// fixed contiguous blocks (a function of n_paths and block_size only, never
/// of the worker count); workers claim whole blocks, each block accumulates
/// its paths in index order, and the blocks are merged sequentially.  Output
/// is therefore bit-identical for any worker count.
template <class BlockState, class PerPath, class Merge>
void run_blocked(long n_paths, const ParallelOptions& opt, PerPath&& per_path, Merge&& merge) {
    if (n_paths <= 0) return;
    const long bs = opt.block_size > 0 ? opt.block_size : 64;
    const long n_blocks = (n_paths + bs - 1) / bs;
    std::vector<BlockState> states(static_cast<std::size_t>(n_blocks));

    const unsigned workers = opt.workers > 0 ? opt.workers : 1;
    if (workers == 1) {
        for (long b = 0; b < n_blocks; ++b)
            for (long path = b * bs; path < std::min(n_paths, (b + 1) * bs); ++path)
                per_path(path, states[static_cast<std::size_t>(b)]);
    } else {
        std::atomic<long> next{0};
        auto work = [&] {
            for (;;) {
                const long b = next.fetch_add(1);
                if (b >= n_blocks) return;
                for (long path = b * bs; path < std::min(n_paths, (b + 1) * bs); ++path)
                    per_path(path, states[static_cast<std::size_t>(b)]);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (long b = 0; b < n_blocks; ++b) merge(states[static_cast<std::size_t>(b)]);
}

}  // namespace spdelab
