#pragma once

#include <functional>

namespace irsqr {

/// Worker count actually used: `requested` when positive, otherwise the
/// hardware concurrency, in both cases capped by the IRSQR_THREADS
/// environment variable when it is set.
int effective_thread_count(int requested = 0);

/// Runs body(0..n-1) across workers. Each index must only write its own
/// state (or commutative integer accumulators) so results never depend on
/// the thread count.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace irsqr
