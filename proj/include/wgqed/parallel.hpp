#pragma once

#include <cstddef>
#include <functional>

namespace wgqed {

// Worker count: WGQED_WORKERS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t worker_count();

// Calls body(i) for i in [0, n). Iterations are distributed over
// worker_count() threads; body must only write to slot i of any output.
// The exception thrown by the lowest failing index is rethrown after all
// workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace wgqed
