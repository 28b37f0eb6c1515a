#pragma once

#include <cstddef>
#include <functional>

namespace setorder {

/// Worker count: SETORDER_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
std::size_t thread_count();

/// Runs body(i) for i in [0, n). Results must not depend on scheduling; the
/// first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace setorder
