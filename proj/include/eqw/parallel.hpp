// parallel.hpp
// Fixed-chunk parallel reduction whose result does not depend on the number
// of worker threads: items are cut into chunks of a fixed size, each chunk is
// reduced sequentially, and chunk partials are merged strictly in chunk order.

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace eqw {

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// `work(begin, end)` returns a Partial for items [begin, end);
/// `merge(Partial&&)` is invoked once per chunk in increasing chunk order.
template <class Work, class Merge>
void ordered_chunk_reduce(std::size_t n_items, std::size_t chunk, unsigned threads, Work&& work,
                          Merge&& merge) {
    if (n_items == 0) return;
    chunk = std::max<std::size_t>(chunk, 1);
    threads = resolve_threads(threads);
    const std::size_t n_chunks = (n_items + chunk - 1) / chunk;

    using Partial = decltype(work(std::size_t{}, std::size_t{}));
    const auto bounds = [&](std::size_t c) {
        return std::pair{c * chunk, std::min(n_items, (c + 1) * chunk)};
    };

    if (threads == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            auto [b, e] = bounds(c);
            merge(work(b, e));
        }
        return;
    }

    // Waves of `threads` chunks; a wave is merged in order once it finishes.
    for (std::size_t first = 0; first < n_chunks; first += threads) {
        const std::size_t last = std::min(n_chunks, first + threads);
        std::vector<std::optional<Partial>> slots(last - first);
        std::vector<std::exception_ptr> errors(last - first);
        std::vector<std::thread> pool;
        pool.reserve(last - first);
        for (std::size_t c = first; c < last; ++c) {
            pool.emplace_back([&, c] {
                try {
                    auto [b, e] = bounds(c);
                    slots[c - first].emplace(work(b, e));
                } catch (...) {
                    errors[c - first] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& err : errors)
            if (err) std::rethrow_exception(err);
        for (auto& slot : slots) merge(std::move(*slot));
    }
}

/// Runs `fn(i)` for i in [0, n) over up to `threads` workers using contiguous
/// blocks. `fn` must only write to state owned by index i.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    threads = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t block = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::size_t b = w * block, e = std::min(n, b + block);
        if (b >= e) break;
        pool.emplace_back([&, w, b, e] {
            try {
                for (std::size_t i = b; i < e; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
}

}  // namespace eqw
