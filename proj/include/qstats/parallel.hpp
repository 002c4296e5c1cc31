#pragma once

#include <cstddef>
#include <functional>

namespace qstats {

/// Global cap on worker threads. Zero means "not set": the value of
/// QUENCH_STATS_THREADS is used if present, otherwise the hardware count.
void set_thread_cap(unsigned cap);
[[nodiscard]] unsigned thread_cap();

/// Runs body(i) for i in [0, n). Work is split into contiguous blocks, so
/// any reduction the caller does afterwards over per-index slots is
/// independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qstats
