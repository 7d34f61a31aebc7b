#pragma once

#include <functional>

namespace oaslab {

// Worker count resolution: explicit request, else the OASLAB_THREADS
// environment variable, else hardware concurrency. OASLAB_THREADS always wins
// when set.
int resolve_workers(int requested);

// Runs fn(i) for i in [0, n) across `workers` threads. Callers must write
// results into index-addressed slots; the schedule then never influences the
// outcome. Exceptions from workers are rethrown on the calling thread.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

}  // namespace oaslab
