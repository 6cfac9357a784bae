#pragma once

#include <cstddef>
#include <functional>

namespace eqens::cli {

/// Worker count from EQENS_THREADS (default: hardware concurrency, at least 1).
unsigned thread_count();

/// Runs task(i) for i in [0, n) on up to thread_count() threads.  Tasks write
/// into caller-owned slots, so results keep their index order.  The first
/// exception thrown by any task is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

}  // namespace eqens::cli
