#include "lipt/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace lipt {

namespace {
int g_threads = [] {
    if (const char* env = std::getenv("LIPT_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}();
}

int thread_count() { return g_threads; }

void set_thread_count(int n) { g_threads = n < 1 ? 1 : n; }

void parallel_chunks(int chunks, const std::function<void(int)>& fn) {
    int workers = std::min(g_threads, chunks);
    if (workers <= 1) {
        for (int c = 0; c < chunks; ++c) fn(c);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) fn(c);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace lipt
