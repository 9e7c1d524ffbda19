#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace polarbd {

inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [begin, end) across `workers` threads on static index
// ranges. Each index is processed exactly once regardless of the worker count,
// so writes keyed by i are reproducible at any parallelism level.
template <class Fn>
void parallel_for(std::uint64_t begin, std::uint64_t end, int workers, Fn&& fn) {
    const std::uint64_t count = end > begin ? end - begin : 0;
    if (count == 0) return;
    const std::uint64_t w = static_cast<std::uint64_t>(resolve_workers(workers));
    if (w <= 1 || count == 1) {
        for (std::uint64_t i = begin; i < end; ++i) fn(i);
        return;
    }
    std::mutex err_mutex;
    std::exception_ptr error;
    auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
        try {
            for (std::uint64_t i = lo; i < hi; ++i) fn(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (!error) error = std::current_exception();
        }
    };
    std::vector<std::thread> threads;
    for (std::uint64_t t = 0; t < w; ++t) {
        const std::uint64_t lo = begin + count * t / w;
        const std::uint64_t hi = begin + count * (t + 1) / w;
        if (lo < hi) threads.emplace_back(run_range, lo, hi);
    }
    for (auto& th : threads) th.join();
    if (error) std::rethrow_exception(error);
}

// Static-range variant for workers that amortize per-thread state (decoder
// instances) across a contiguous index range. fn(lo, hi) must derive all
// randomness from per-index streams so the range split cannot affect results.
template <class Fn>
void parallel_ranges(std::uint64_t begin, std::uint64_t end, int workers, Fn&& fn) {
    const std::uint64_t count = end > begin ? end - begin : 0;
    if (count == 0) return;
    const std::uint64_t w = static_cast<std::uint64_t>(resolve_workers(workers));
    if (w <= 1 || count == 1) {
        fn(begin, end);
        return;
    }
    std::mutex err_mutex;
    std::exception_ptr error;
    auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
        try {
            fn(lo, hi);
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (!error) error = std::current_exception();
        }
    };
    std::vector<std::thread> threads;
    for (std::uint64_t t = 0; t < w; ++t) {
        const std::uint64_t lo = begin + count * t / w;
        const std::uint64_t hi = begin + count * (t + 1) / w;
        if (lo < hi) threads.emplace_back(run_range, lo, hi);
    }
    for (auto& th : threads) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace polarbd
