#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace rlab {

/// Process-wide worker count used by the search and sweep loops.
/// 0 means "auto" (hardware concurrency).
void set_thread_count(int n);
int thread_count();

/// Runs fn(i) for i in [0, n) on static index chunks. fn must be
/// thread-safe; determinism is the caller's job (pure per-index work).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Deterministic parallel reduction: each index yields a value, combine is
/// associative and order-fixed (chunks are merged in index order), so the
/// result does not depend on the number of threads.
template <typename T, typename Produce, typename Combine>
T parallel_reduce(std::size_t n, T init, Produce produce, Combine combine) {
    const int workers = thread_count();
    if (n == 0) return init;
    if (workers <= 1 || n < 128) {
        T acc = init;
        for (std::size_t i = 0; i < n; ++i) acc = combine(acc, produce(i));
        return acc;
    }
    const std::size_t chunks = static_cast<std::size_t>(workers);
    std::vector<T> partial(chunks, init);
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    const std::size_t step = (n + chunks - 1) / chunks;
    for (std::size_t c = 0; c < chunks; ++c) {
        pool.emplace_back([&, c]() {
            const std::size_t lo = c * step;
            const std::size_t hi = std::min(n, lo + step);
            T acc = init;
            for (std::size_t i = lo; i < hi; ++i) acc = combine(acc, produce(i));
            partial[c] = acc;
        });
    }
    for (auto& t : pool) t.join();
    T acc = init;
    for (const T& p : partial) acc = combine(acc, p);
    return acc;
}

} // namespace rlab
