#include "liouville/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace liouville {
namespace {

unsigned workers_from_env() {
    const char* env = std::getenv("LIOUVILLE_WORKERS");
    if (env == nullptr) return 1;
    try {
        const long v = std::stol(env);
        return v > 0 ? static_cast<unsigned>(v) : 1;
    } catch (const std::exception&) {
        return 1;
    }
}

std::atomic<unsigned>& workers_slot() {
    static std::atomic<unsigned> slot{workers_from_env()};
    return slot;
}

}  // namespace

unsigned worker_count() { return workers_slot().load(); }

void set_worker_count(unsigned n) { workers_slot().store(std::max(1u, n)); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace liouville
