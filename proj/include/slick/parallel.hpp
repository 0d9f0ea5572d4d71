#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace slick {

// Process-wide worker count; the CLI sets this from --threads.
int worker_threads();
void set_worker_threads(int n);

// Chunked parallel loop over [0, n). fn(begin, end) runs on disjoint
// ranges, so output written per-index is schedule-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace slick
