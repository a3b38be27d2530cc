#pragma once

#include <cstddef>
#include <functional>

namespace iwasawa {

/// Worker count: hardware concurrency, capped by IWASAWA_THREADS when that
/// holds a positive integer. Never less than 1.
std::size_t worker_count();

/// Runs body(i) for i in [0, count) across worker_count() threads. Each index
/// runs exactly once; the first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace iwasawa
