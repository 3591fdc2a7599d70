#pragma once

#include <cstddef>
#include <functional>

namespace cclab {

/// Resolve a requested thread count: explicit value wins, then the
/// CCLAB_THREADS environment variable, then hardware concurrency.
int resolve_thread_count(int requested);

/// Run body(i) for i in [0, count). Work is striped statically over the
/// requested number of threads; every item writes only to its own slot, so
/// results are identical for any thread count. Exceptions propagate (the
/// first one thrown, by item order, is rethrown).
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace cclab
