#pragma once

#include <cstddef>
#include <functional>

namespace atomsg {

// Worker count: min(hardware, ATOMSG_THREADS when set). At least 1.
int thread_count();

// Runs fn(i) for i in [0, n) across thread_count() workers. Results must be
// written to index-addressed storage by the caller so that the combination
// order (and therefore every float sum) is independent of the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace atomsg
