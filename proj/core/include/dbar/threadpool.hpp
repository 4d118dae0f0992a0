#pragma once

/// \file threadpool.hpp
/// Deterministic data-parallel helper.  parallel_for splits an index range
/// into contiguous blocks, one per worker; each iteration writes only to
/// its own output slot, and any reduction over results is performed by the
/// caller serially in index order.  Results are therefore bit-identical
/// regardless of the worker count.

#include <cstddef>
#include <functional>

namespace dbar {

/// Global worker count used by parallel_for (0 = hardware concurrency).
void set_thread_count(int n);
int thread_count();

/// Run fn(i) for i in [0, n) using the configured worker count.  fn must
/// only write to per-index storage; iterations may run in any order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace dbar
