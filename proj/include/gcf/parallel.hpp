#pragma once

#include <cstddef>
#include <functional>

namespace gcf {

/// Worker count used when a caller passes 0: the GCF_THREADS environment
/// variable if set to a positive integer, otherwise the hardware concurrency.
unsigned default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = default).
/// Indices are split into contiguous blocks; body must only write to
/// per-index state.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace gcf
