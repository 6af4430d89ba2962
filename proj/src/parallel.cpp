#include "nlslab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace nlslab {

namespace {
std::atomic<int> workers{0};
}

void set_thread_count(int n) { workers = std::max(0, n); }

int thread_count() {
    int n = workers.load();
    if (n > 0) return n;
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : int(h);
}

void parallel_for(int count, const std::function<void(int)>& body) {
    if (count <= 0) return;
    int nt = std::min(thread_count(), count);
    std::vector<std::exception_ptr> errors(count);
    if (nt <= 1) {
        for (int i = 0; i < count; ++i) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&] {
                for (int i = next++; i < count; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace nlslab
