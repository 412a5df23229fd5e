#pragma once

#include <functional>

namespace opgeom {

/// Parallelism cap: the OPGEOM_THREADS environment variable when set (must
/// parse as a positive integer, else std::invalid_argument), otherwise the
/// hardware concurrency.
int thread_cap();

/// Runs fn(0..count-1) across at most thread_cap() workers. Each index owns
/// its own output slot, so results are identical for any thread count.
void parallel_for_index(int count, const std::function<void(int)>& fn);

}  // namespace opgeom
