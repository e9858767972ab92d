#include "bisparse/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace bisparse {

namespace {

std::atomic<int> g_max_threads{0};

int default_threads() {
    if (const char* env = std::getenv("BISPARSE_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

void set_max_threads(int n) { g_max_threads.store(n); }

int max_threads() {
    const int v = g_max_threads.load();
    return v > 0 ? v : default_threads();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    const int workers =
        static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(max_threads()), n));
    if (workers <= 1 || n < 1024) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
        const std::size_t begin = chunk * static_cast<std::size_t>(t);
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace bisparse
