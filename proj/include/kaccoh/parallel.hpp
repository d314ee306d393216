#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace kaccoh {

// Worker count: KACCOH_THREADS if set (>=1), else hardware concurrency
// capped at 8.
std::size_t worker_count();

// Runs fn(i) for i in [0, count) on up to worker_count() threads.
// The first exception thrown by any task is rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace kaccoh
