#include "pompeiu/parallel.hpp"

#include <atomic>
#include <mutex>
#include <thread>

namespace pompeiu {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned n) { g_threads.store(n); }

unsigned thread_count() {
    unsigned n = g_threads.load();
    if (n == 0) {
        n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
    }
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned workers = thread_count();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        for (;;) {
            if (failed.load()) return;
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    pool.reserve(spawn);
    for (unsigned t = 1; t < spawn; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

Complex reduce_complex(std::size_t n, const std::function<Complex(std::size_t)>& term,
                       std::size_t chunk) {
    if (chunk == 0) chunk = 1;
    std::size_t nchunks = (n + chunk - 1) / chunk;
    std::vector<Complex> partials(nchunks, Complex{0.0, 0.0});
    parallel_for(nchunks, [&](std::size_t c) {
        CompensatedComplexSum s;
        std::size_t begin = c * chunk;
        std::size_t end = std::min(n, begin + chunk);
        for (std::size_t i = begin; i < end; ++i) s.add(term(i));
        partials[c] = s.value();
    });
    CompensatedComplexSum total;
    for (const Complex& p : partials) total.add(p);
    return total.value();
}

}  // namespace pompeiu
