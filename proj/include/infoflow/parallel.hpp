#pragma once

#include <cstddef>
#include <functional>

namespace infoflow {

/// Worker count used when callers pass 0: INFOFLOW_THREADS if set to a
/// positive integer, otherwise std::thread::hardware_concurrency().
std::size_t default_thread_count();

/// Calls body(begin, end) over contiguous chunks of [0, count) on up to
/// `threads` workers (0 means default_thread_count()). Blocks until done.
/// If chunks throw, the exception from the lowest chunk is rethrown, so the
/// reported error does not depend on scheduling.
void parallel_for(std::size_t count, std::size_t threads, std::size_t grain,
                  const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace infoflow
