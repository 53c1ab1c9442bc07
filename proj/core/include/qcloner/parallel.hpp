#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace qcloner {

/// Evaluates fn(0..n-1) on a small pool of threads and returns the results in
/// index order, so the output does not depend on scheduling.
template <typename Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t{}))>
{
    using Result = decltype(fn(std::size_t{}));
    std::vector<std::optional<Result>> slots(n);
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));

    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n; i += workers) {
                    try {
                        slots[i].emplace(fn(i));
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                        return;
                    }
                }
            });
    }
    if (failure)
        std::rethrow_exception(failure);

    std::vector<Result> out;
    out.reserve(n);
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

}  // namespace qcloner
