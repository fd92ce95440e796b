#pragma once

#include <cstddef>
#include <functional>

namespace rmtlab {

/// Worker count: RMT_LAB_THREADS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (0 or unset means "auto").
unsigned thread_count();

/// Runs body(i) for i in [0, count). Iterations must write to disjoint
/// outputs; the first exception thrown by any iteration is rethrown here.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace rmtlab
