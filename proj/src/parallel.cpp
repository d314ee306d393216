#include "kaccoh/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>

namespace kaccoh {

std::size_t worker_count() {
    if (const char* env = std::getenv("KACCOH_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return std::min<std::size_t>(hw, 8);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    const std::size_t workers = std::min(worker_count(), count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    // hand out high indices first: in every caller those are the heavy ones
    auto work = [&]() {
        for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= count) return;
            try {
                fn(count - 1 - k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t w = 0; w + 1 < workers; ++w) threads.emplace_back(work);
        work();
        for (auto& t : threads) t.join();
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace kaccoh
