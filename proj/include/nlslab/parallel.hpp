#pragma once

#include <functional>

namespace nlslab {

// Worker count used by ensemble and sweep helpers.  0 selects the hardware concurrency.
void set_thread_count(int n);
int thread_count();

// Runs body(i) for i in [0, count) on the worker pool.  Results must be written
// to per-index slots; the first exception (lowest index) is rethrown.
void parallel_for(int count, const std::function<void(int)>& body);

} // namespace nlslab
