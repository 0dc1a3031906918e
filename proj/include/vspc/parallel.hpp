#pragma once

#include <cstddef>
#include <functional>

namespace vspc {

/// Worker count for internal parallel loops: VSPC_THREADS when set to a
/// positive integer, otherwise 1.
int thread_count();

/// Runs body(i) for i in [0, count), split into contiguous chunks over
/// thread_count() threads. Each index is visited exactly once, so results are
/// independent of the thread count as long as body(i) only writes slot i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace vspc
