#pragma once

#include <cstddef>
#include <functional>

namespace eisen {

// Process-wide worker budget.  0 selects std::thread::hardware_concurrency().
void set_thread_budget(unsigned threads);
unsigned thread_budget();

// Runs task(0..count-1), each exactly once, on at most thread_budget() threads.
// Callers write results into per-task slots and reduce afterwards in index
// order, which keeps every reduction independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace eisen
