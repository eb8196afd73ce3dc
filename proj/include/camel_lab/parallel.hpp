#pragma once

// Index-parallel loops with deterministic per-index seeds. Results depend only
// on the index, never on the thread that ran it.

#include <cstddef>
#include <cstdint>
#include <functional>

namespace camel {

/// Worker count: CAMEL_LAB_THREADS if set (>= 1), else the hardware concurrency.
int thread_count();

/// Calls body(i) for i in [0, count) on up to thread_count() threads.
/// The first exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Seed for task `index` of a run seeded with `seed` (splitmix64 mixing).
std::uint64_t task_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace camel
