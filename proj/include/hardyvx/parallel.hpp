#pragma once

#include <cstddef>
#include <functional>

namespace hardyvx {

/// Worker count: HARDYVX_THREADS if set and positive, else hardware cores.
std::size_t worker_count();

/// Calls fn(i) for i in [0, n) across worker_count() threads. Each index is
/// run exactly once; results must be written to per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hardyvx
