#pragma once

#include <cstddef>
#include <functional>

namespace phasebit {

/// Worker count: hardware concurrency, capped by the PHASEBIT_THREADS
/// environment variable when set.
unsigned worker_count();

/// Runs fn(0..count-1) across workers. Tasks must be independent; any task
/// exception is rethrown on the caller thread after the pool drains.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace phasebit
