#pragma once

#include <cstddef>
#include <functional>

namespace kkmforge {

/// Worker count: hardware concurrency, capped by KKMFORGE_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Exceptions are rethrown (lowest index first).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace kkmforge
