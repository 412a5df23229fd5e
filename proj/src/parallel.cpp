#include "opgeom/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace opgeom {

int thread_cap() {
    const char* env = std::getenv("OPGEOM_THREADS");
    if (env != nullptr && *env != '\0') {
        std::size_t pos = 0;
        long value = 0;
        try {
            value = std::stol(env, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("OPGEOM_THREADS must be a positive integer, got '" +
                                        std::string(env) + "'");
        }
        if (env[pos] != '\0' || value < 1)
            throw std::invalid_argument("OPGEOM_THREADS must be a positive integer, got '" +
                                        std::string(env) + "'");
        return static_cast<int>(value);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for_index(int count, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    const int workers = std::min(count, thread_cap());
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace opgeom
