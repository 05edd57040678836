#pragma once

#include <cstddef>
#include <functional>

namespace jscheme {

/// Worker count: JS_WORKERS if set and positive, else hardware concurrency.
std::size_t default_workers();

/// Runs body(i) for i in [0, count) across up to `workers` threads. Items are
/// claimed one at a time from a shared counter. The first exception thrown by
/// any body is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body);

}  // namespace jscheme
