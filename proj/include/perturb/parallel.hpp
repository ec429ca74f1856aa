#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <type_traits>
#include <vector>

namespace perturb {

// Calls fn(i) for i in [0, count) on up to `threads` workers and returns the
// results indexed by i, so the output never depends on scheduling. The first
// exception by index is rethrown after all workers stop.
template <class Fn>
auto run_indexed(int count, int threads, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, int>> {
    using Result = std::invoke_result_t<Fn&, int>;
    if (count < 0) throw std::invalid_argument("run_indexed: negative count");
    std::vector<Result> results(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (int i = next++; i < count && !failed; i = next++) {
            try {
                results[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
                failed = true;
            }
        }
    };
    const int workers = std::clamp(threads, 1, std::max(count, 1));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

inline int default_thread_count() { return std::max(1U, std::thread::hardware_concurrency()); }

}  // namespace perturb
