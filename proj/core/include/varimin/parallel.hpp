#pragma once

#include <cstddef>
#include <functional>

namespace varimin {

// Worker count: VARIMIN_THREADS if set (>= 1), else hardware concurrency.
int thread_count();

// Runs fn(i) for i in [0, n). Each index must write only its own outputs;
// the partition is static so results never depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace varimin
