#pragma once

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace picard {

using cplx = std::complex<double>;

namespace parallel {

inline std::atomic<int> &thread_count_ref() {
    static std::atomic<int> n{1};
    return n;
}

inline void set_threads(int n) { thread_count_ref() = std::max(1, n); }
inline int threads() { return thread_count_ref().load(); }

// Runs body(chunk) for chunk in [0, nchunks). Chunks are claimed dynamically,
// so callers must write results into per-chunk slots.
inline void for_chunks(std::size_t nchunks, const std::function<void(std::size_t)> &body) {
    int nt = std::min<std::size_t>(threads(), nchunks);
    if (nt <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c) body(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t c = next++;
                if (c >= nchunks || failed) return;
                try {
                    body(c);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto &th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

// Deterministic sum of f(i), i in [0,n). The chunk layout depends only on n and
// chunk, never on the thread count, and partial sums are combined in order.
template <class T, class F>
T ordered_sum(std::size_t n, F &&f, std::size_t chunk = 256) {
    if (n == 0) return T{};
    std::size_t nchunks = (n + chunk - 1) / chunk;
    std::vector<T> part(nchunks, T{});
    for_chunks(nchunks, [&](std::size_t c) {
        T acc{};
        std::size_t lo = c * chunk, hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) acc += f(i);
        part[c] = acc;
    });
    T total{};
    for (auto &p : part) total += p;
    return total;
}

template <class T, class F>
std::vector<T> ordered_map(std::size_t n, F &&f, std::size_t chunk = 1) {
    std::vector<T> out(n);
    std::size_t nchunks = (n + chunk - 1) / chunk;
    for_chunks(nchunks, [&](std::size_t c) {
        std::size_t lo = c * chunk, hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) out[i] = f(i);
    });
    return out;
}

} // namespace parallel
} // namespace picard
