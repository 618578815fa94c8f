#pragma once

#include <cstddef>
#include <functional>

namespace wb {

// Number of worker threads used by data-parallel loops. Defaults to the
// hardware concurrency, capped by the WIDTHBRIGHT_THREADS environment
// variable when it is set to a positive integer.
unsigned worker_count();

// Runs fn(i) for i in [0, n). Each index is visited exactly once; fn must
// only write to state owned by its index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace wb
