#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace tns {

/// Worker-thread budget for ensemble loops; 1 disables threading.
void set_thread_budget(int n);
int thread_budget();

/// Runs fn(i) for i in [0, n) on up to thread_budget() workers.  Each index
/// is executed exactly once; the caller supplies any ordered reduction by
/// writing into preallocated slots.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
    int budget = thread_budget();
    if (budget <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    };
    int workers = std::min(budget, n);
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

}  // namespace tns
