#pragma once

#include <cstddef>
#include <functional>

namespace fosc {

/// Worker count: FOSC_THREADS if set and positive, otherwise hardware concurrency.
[[nodiscard]] unsigned thread_count();

/// Calls body(i) for i in [0, count) on up to thread_count() threads.
/// Iterations must be independent. The first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fosc
