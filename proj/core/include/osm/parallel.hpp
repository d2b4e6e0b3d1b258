#pragma once

#include <cstddef>
#include <functional>

namespace osm {

// 0 means: OSM_THREADS if set, otherwise the hardware concurrency.
std::size_t resolve_threads(std::size_t requested);

// Runs fn(i) for i in [0, n) on up to `threads` workers. Exceptions thrown by
// fn are rethrown (the first one) after all workers finish.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace osm
