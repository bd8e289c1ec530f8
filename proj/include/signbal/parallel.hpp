#pragma once

#include <cstddef>
#include <functional>

namespace signbal {

/// Worker count used when the caller passes 0: SIGNBAL_THREADS if set,
/// otherwise std::thread::hardware_concurrency().
unsigned default_threads();

/// Runs body(i) for every i in [0, count) on up to `threads` workers
/// (0 = default_threads()). Tasks must write to disjoint outputs; the first
/// exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace signbal
